//! Built-in test posets.

use super::{PosetError, RankedPoset, RawPoset};

const NAMES: [&str; 5] = ["chain3", "diamond", "pinch", "cycle4", "wedge"];

pub fn fixture_names() -> &'static [&'static str] {
    &NAMES
}

fn raw(elements: &[(&str, usize)], covers: &[(&str, &str)]) -> RawPoset {
    RawPoset {
        elements: elements.iter().map(|&(a, r)| (a.to_string(), r)).collect(),
        covers: covers
            .iter()
            .map(|&(a, b)| (a.to_string(), b.to_string()))
            .collect(),
    }
}

/// Looks up a fixture by (case-insensitive) name.
pub fn fixture(name: &str) -> Option<RankedPoset> {
    let p = match name.to_ascii_lowercase().as_str() {
        "chain3" => raw(
            &[("c1", 1), ("c2", 2), ("c3", 3)],
            &[("c2", "c1"), ("c3", "c2")],
        ),
        "diamond" => raw(&[("a", 1), ("b", 1), ("c", 2)], &[("c", "a"), ("c", "b")]),
        "pinch" => raw(
            &[("a", 1), ("b", 1), ("u", 2), ("v", 2), ("x", 3)],
            &[("u", "a"), ("v", "b"), ("x", "u"), ("x", "v")],
        ),
        "cycle4" => raw(
            &[("a", 1), ("b", 1), ("u", 2), ("v", 2), ("x", 3)],
            &[
                ("u", "a"),
                ("u", "b"),
                ("v", "a"),
                ("v", "b"),
                ("x", "u"),
                ("x", "v"),
            ],
        ),
        "wedge" => return wedge_fixture().ok(),
        _ => return None,
    };
    RankedPoset::validate(&p).ok()
}

fn wedge_fixture() -> Result<RankedPoset, PosetError> {
    let c = fixture("cycle4").expect("cycle4 fixture");
    RankedPoset::wedge(&c, &c)?.adjoin_top()
}

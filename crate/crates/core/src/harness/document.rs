//! The JSON poset file. Only `Γ₊` is listed; `*` is implicit and covered by every rank-1
//! element.

use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::exactlin::FieldSpec;
use crate::poset::{RankedPoset, RawPoset};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementEntry {
    pub id: String,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDocument {
    pub name: String,
    pub field: FieldSpec,
    pub elements: Vec<ElementEntry>,
    /// `[upper, lower]` pairs.
    pub covers: Vec<[String; 2]>,
}

impl PosetDocument {
    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Pretty JSON with a trailing newline; `parse` then `to_json` reproduces it exactly.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn raw(&self) -> RawPoset {
        RawPoset {
            elements: self.elements.iter().map(|e| (e.id.clone(), e.rank)).collect(),
            covers: self
                .covers
                .iter()
                .map(|[u, l]| (u.clone(), l.clone()))
                .collect(),
        }
    }

    pub fn to_poset(&self) -> Result<RankedPoset, HarnessError> {
        Ok(RankedPoset::validate(&self.raw())?)
    }

    pub fn from_poset(name: &str, field: FieldSpec, poset: &RankedPoset) -> Self {
        let elements = poset
            .plus()
            .map(|x| ElementEntry {
                id: poset.name(x).to_string(),
                rank: poset.rank(x),
            })
            .collect();
        let covers = poset
            .plus()
            .flat_map(|x| {
                poset
                    .lower_covers_plus(x)
                    .iter()
                    .map(move |&y| [poset.name(x).to_string(), poset.name(y).to_string()])
            })
            .collect();
        PosetDocument {
            name: name.to_string(),
            field,
            elements,
            covers,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::fixture;

    #[test]
    fn round_trip() {
        let p = fixture("cycle4").unwrap();
        let doc = PosetDocument::from_poset("cycle4", FieldSpec::Prime(2), &p);
        let text = doc.to_json();
        let back = PosetDocument::parse(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json(), text);
        assert_eq!(back.to_poset().unwrap(), p);
    }

    #[test]
    fn unknown_keys_rejected() {
        let text = r#"{"name":"x","field":"rational","elements":[],"covers":[],"extra":1}"#;
        assert!(PosetDocument::parse(text).is_err());
        let text = r#"{"name":"x","field":"gf:4","elements":[],"covers":[]}"#;
        assert!(PosetDocument::parse(text).is_err());
    }
}

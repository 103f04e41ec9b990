//! A finite State-Context-Property system.
//!
//! States Σ (with a ground state), contexts M and properties L are finite
//! label sets. The transition function μ(q, e, p) is the probability that
//! context `e` changes state `p` into `q`; the applicability function ν(p, a)
//! weights property `a` in state `p`. Only explicitly enumerated values are
//! stored.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Read;

use serde::{Deserialize, Serialize};

use super::check_probability;
use crate::{Error, Result};

const TRANSITION_SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransitionEntry {
    pub context: String,
    pub from: String,
    pub to: BTreeMap<String, f64>,
    /// When set, `to` lists only part of the outcome set and may sum below 1.
    #[serde(default)]
    pub partial: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApplicabilityEntry {
    pub state: String,
    pub property: String,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct RawScop {
    states: Vec<String>,
    ground_state: String,
    contexts: Vec<String>,
    #[serde(default)]
    properties: Vec<String>,
    #[serde(default)]
    transitions: Vec<TransitionEntry>,
    #[serde(default)]
    applicability: Vec<ApplicabilityEntry>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScopModel {
    states: Vec<String>,
    ground: String,
    contexts: Vec<String>,
    properties: Vec<String>,
    transitions: BTreeMap<(String, String), TransitionEntry>,
    applicability: BTreeMap<(String, String), f64>,
}

impl ScopModel {
    pub fn builder(ground_state: &str) -> ScopModelBuilder {
        ScopModelBuilder {
            raw: RawScop {
                states: vec![ground_state.to_string()],
                ground_state: ground_state.to_string(),
                contexts: Vec::new(),
                properties: Vec::new(),
                transitions: Vec::new(),
                applicability: Vec::new(),
            },
        }
    }

    /// SCoP model of a combined concept "N instances of a two-state concept":
    /// a ground state, one context `e` and the `N + 1` occupation states
    /// `p(n,N-n)`, with μ(p(n,N-n), e, ground) = `probabilities[n]`.
    pub fn occupation_model(n: usize, probabilities: &[f64]) -> Result<Self> {
        if probabilities.len() != n + 1 {
            return Err(Error::LengthMismatch {
                left: n + 1,
                right: probabilities.len(),
            });
        }
        let mut b = Self::builder("ground").context("e");
        let mut row = Vec::with_capacity(n + 1);
        for (k, p) in probabilities.iter().enumerate() {
            let label = occupation_label(k, n);
            b = b.state(&label);
            row.push((label, *p));
        }
        let row: Vec<(&str, f64)> = row.iter().map(|(l, p)| (l.as_str(), *p)).collect();
        b.transition("e", "ground", &row).build()
    }

    pub fn ground_state(&self) -> &str {
        &self.ground
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn contexts(&self) -> &[String] {
        &self.contexts
    }

    pub fn properties(&self) -> &[String] {
        &self.properties
    }

    pub fn applicability(&self, state: &str, property: &str) -> Result<f64> {
        self.require_state(state)?;
        if !self.properties.iter().any(|p| p == property) {
            return Err(Error::Lookup {
                kind: "property",
                name: property.to_string(),
            });
        }
        self.applicability
            .get(&(state.to_string(), property.to_string()))
            .copied()
            .ok_or_else(|| Error::Lookup {
                kind: "applicability entry",
                name: format!("({state}, {property})"),
            })
    }

    fn require_state(&self, s: &str) -> Result<()> {
        if self.states.iter().any(|x| x == s) {
            Ok(())
        } else {
            Err(Error::Lookup {
                kind: "state",
                name: s.to_string(),
            })
        }
    }

    pub fn to_json(&self) -> String {
        let raw = RawScop {
            states: self.states.clone(),
            ground_state: self.ground.clone(),
            contexts: self.contexts.clone(),
            properties: self.properties.clone(),
            transitions: self.transitions.values().cloned().collect(),
            applicability: self
                .applicability
                .iter()
                .map(|((s, p), w)| ApplicabilityEntry {
                    state: s.clone(),
                    property: p.clone(),
                    weight: *w,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("model always serializes")
    }

    fn from_raw(raw: RawScop) -> Result<Self> {
        let unique = |kind: &str, items: &[String]| -> Result<()> {
            let set: BTreeSet<&String> = items.iter().collect();
            if set.len() != items.len() {
                return Err(Error::Schema(format!("duplicate {kind} label")));
            }
            Ok(())
        };
        unique("state", &raw.states)?;
        unique("context", &raw.contexts)?;
        unique("property", &raw.properties)?;
        if !raw.states.contains(&raw.ground_state) {
            return Err(Error::Schema(format!(
                "ground state `{}` is not in the state set",
                raw.ground_state
            )));
        }
        let has_state = |s: &String| raw.states.contains(s);

        let mut transitions = BTreeMap::new();
        for t in raw.transitions {
            if !raw.contexts.contains(&t.context) {
                return Err(Error::Lookup {
                    kind: "context",
                    name: t.context,
                });
            }
            for s in std::iter::once(&t.from).chain(t.to.keys()) {
                if !has_state(s) {
                    return Err(Error::Lookup {
                        kind: "state",
                        name: s.clone(),
                    });
                }
            }
            let subject = format!("transition ({}, {})", t.context, t.from);
            for (q, p) in &t.to {
                check_probability(&subject, q, *p)?;
            }
            let sum: f64 = t.to.values().sum();
            let ok = if t.partial {
                sum <= 1.0 + TRANSITION_SUM_TOLERANCE
            } else {
                (sum - 1.0).abs() <= TRANSITION_SUM_TOLERANCE
            };
            if !ok {
                return Err(Error::validation(
                    subject,
                    format!("probabilities sum to {sum}"),
                ));
            }
            let key = (t.context.clone(), t.from.clone());
            if transitions.insert(key, t).is_some() {
                return Err(Error::Schema("transition listed twice".into()));
            }
        }

        let mut applicability = BTreeMap::new();
        for a in raw.applicability {
            if !has_state(&a.state) {
                return Err(Error::Lookup {
                    kind: "state",
                    name: a.state,
                });
            }
            if !raw.properties.contains(&a.property) {
                return Err(Error::Lookup {
                    kind: "property",
                    name: a.property,
                });
            }
            check_probability("applicability", &a.property, a.weight)?;
            applicability.insert((a.state, a.property), a.weight);
        }

        Ok(ScopModel {
            states: raw.states,
            ground: raw.ground_state,
            contexts: raw.contexts,
            properties: raw.properties,
            transitions,
            applicability,
        })
    }
}

/// Label of the occupation state with `k` instances of the first label out of `n`.
pub(crate) fn occupation_label(k: usize, n: usize) -> String {
    format!("p({},{})", k, n - k)
}

pub struct ScopModelBuilder {
    raw: RawScop,
}

impl ScopModelBuilder {
    pub fn state(mut self, label: &str) -> Self {
        self.raw.states.push(label.to_string());
        self
    }

    pub fn context(mut self, label: &str) -> Self {
        self.raw.contexts.push(label.to_string());
        self
    }

    pub fn property(mut self, label: &str) -> Self {
        self.raw.properties.push(label.to_string());
        self
    }

    pub fn transition(mut self, context: &str, from: &str, to: &[(&str, f64)]) -> Self {
        self.raw.transitions.push(TransitionEntry {
            context: context.to_string(),
            from: from.to_string(),
            to: to.iter().map(|(q, p)| (q.to_string(), *p)).collect(),
            partial: false,
        });
        self
    }

    pub fn applicability(mut self, state: &str, property: &str, weight: f64) -> Self {
        self.raw.applicability.push(ApplicabilityEntry {
            state: state.to_string(),
            property: property.to_string(),
            weight,
        });
        self
    }

    pub fn build(self) -> Result<ScopModel> {
        ScopModel::from_raw(self.raw)
    }
}

pub fn parse_scop<R: Read>(mut source: R) -> Result<ScopModel> {
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes)?;
    ScopModel::from_raw(serde_json::from_slice(&bytes)?)
}

/// μ(·, ctx, from): the stored distribution over target states. For a
/// complete entry every state of Σ appears, with 0 for unlisted targets.
pub fn scop_transition(model: &ScopModel, from: &str, ctx: &str) -> Result<BTreeMap<String, f64>> {
    model.require_state(from)?;
    if !model.contexts.iter().any(|c| c == ctx) {
        return Err(Error::Lookup {
            kind: "context",
            name: ctx.to_string(),
        });
    }
    let entry = model
        .transitions
        .get(&(ctx.to_string(), from.to_string()))
        .ok_or_else(|| Error::Lookup {
            kind: "transition",
            name: format!("({ctx}, {from})"),
        })?;
    if entry.partial {
        return Ok(entry.to.clone());
    }
    Ok(model
        .states
        .iter()
        .map(|s| (s.clone(), entry.to.get(s).copied().unwrap_or(0.0)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_occupation_model() {
        let model = ScopModel::occupation_model(11, &[1.0 / 12.0; 12]).unwrap();
        let dist = scop_transition(&model, "ground", "e").unwrap();
        assert_eq!(dist.len(), 13);
        assert_eq!(dist["ground"], 0.0);
        for k in 0..=11 {
            assert_eq!(dist[&occupation_label(k, 11)], 1.0 / 12.0);
        }
        let total: f64 = dist.values().sum();
        assert!((total - 1.0).abs() < 1e-9);
    }

    #[test]
    fn deterministic_context() {
        let model = ScopModel::builder("ground")
            .state("fish")
            .state("weird")
            .context("e")
            .transition("e", "ground", &[("weird", 1.0)])
            .build()
            .unwrap();
        let dist = scop_transition(&model, "ground", "e").unwrap();
        assert_eq!(dist["weird"], 1.0);
        assert_eq!(dist["fish"], 0.0);
        assert_eq!(dist["ground"], 0.0);
    }

    #[test]
    fn unknown_labels_are_lookup_errors() {
        let model = ScopModel::occupation_model(2, &[0.2, 0.3, 0.5]).unwrap();
        assert!(matches!(
            scop_transition(&model, "ground", "f"),
            Err(Error::Lookup { kind: "context", .. })
        ));
        assert!(matches!(
            scop_transition(&model, "nowhere", "e"),
            Err(Error::Lookup { kind: "state", .. })
        ));
    }

    #[test]
    fn unnormalized_transition_rejected() {
        let r = ScopModel::builder("g")
            .state("q")
            .context("e")
            .transition("e", "g", &[("q", 0.7)])
            .build();
        assert!(matches!(r, Err(Error::Validation { .. })));
    }

    #[test]
    fn applicability_lookup_and_json_round_trip() {
        let model = ScopModel::builder("g")
            .state("q")
            .context("e")
            .property("swims")
            .transition("e", "g", &[("q", 0.25), ("g", 0.75)])
            .applicability("q", "swims", 0.8)
            .build()
            .unwrap();
        assert_eq!(model.applicability("q", "swims").unwrap(), 0.8);
        assert!(model.applicability("g", "swims").is_err());
        let back = parse_scop(model.to_json().as_bytes()).unwrap();
        assert_eq!(back, model);
    }
}

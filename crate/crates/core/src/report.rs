//! Exact law checks evaluated on samples, with counterexamples.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub inputs: Vec<Value>,
    pub lhs: Value,
    pub rhs: Value,
}

/// Outcome of one identity on a batch of samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawReport {
    pub axiom: String,
    pub samples: usize,
    pub failures: Vec<Failure>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates `law` on every sample; a failure records the inputs and both
/// sides. Errors raised by `law` count as failures with the message as `lhs`.
pub fn check_law<S, E, F>(axiom: &str, samples: &[S], mut law: F) -> LawReport
where
    S: Serialize,
    E: Serialize + PartialEq,
    F: FnMut(&S) -> crate::Result<(E, E)>,
{
    let mut failures = Vec::new();
    for s in samples {
        let inputs = match serde_json::to_value(s).expect("serializable sample") {
            Value::Array(v) => v,
            other => vec![other],
        };
        match law(s) {
            Ok((lhs, rhs)) if lhs == rhs => {}
            Ok((lhs, rhs)) => failures.push(Failure {
                inputs,
                lhs: serde_json::to_value(&lhs).expect("serializable"),
                rhs: serde_json::to_value(&rhs).expect("serializable"),
            }),
            Err(e) => failures.push(Failure { inputs, lhs: Value::String(e.to_string()), rhs: Value::Null }),
        }
    }
    LawReport { axiom: axiom.to_string(), samples: samples.len(), failures }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_counterexamples() {
        let r = check_law("x + 1 = x", &[1i64, 2], |x| Ok((x + 1, *x)));
        assert!(!r.passed());
        assert_eq!(r.failures.len(), 2);
        assert_eq!(r.failures[0].inputs, vec![Value::from(1)]);
        let r = check_law("x = x", &[(1i64, 2i64)], |(x, _)| Ok((*x, *x)));
        assert!(r.passed());
        assert_eq!(r.samples, 1);
    }
}

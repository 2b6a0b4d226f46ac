use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::bistellar::{apply_bistellar, BistellarMove};
use super::tree::central_retriangulation;
use crate::complex::{Face, Label, SimplicialComplex};
use crate::error::{Error, Result};

/// One replayable step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", content = "parameters", rename_all = "snake_case")]
pub enum Operation {
    Bistellar { f: Face, g: Face },
    CentralRetriangulation { ball: Vec<Face>, vertex: Label },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    #[serde(flatten)]
    pub operation: Operation,
    /// `(f_0, f_1)` after the step.
    pub resulting: (usize, usize),
}

pub type MoveLog = Vec<MoveRecord>;

/// Vertex and edge counts without enumerating higher faces.
pub fn f0_f1(k: &SimplicialComplex) -> (usize, usize) {
    let mut edges: HashSet<(u32, u32)> = HashSet::new();
    for f in k.facet_ids() {
        for (i, &a) in f.iter().enumerate() {
            for &b in &f[i + 1..] {
                edges.insert((a.min(b), a.max(b)));
            }
        }
    }
    (k.n_vertices(), edges.len())
}

impl Operation {
    pub fn apply(&self, k: &SimplicialComplex) -> Result<SimplicialComplex> {
        match self {
            Operation::Bistellar { f, g } => {
                apply_bistellar(k, &BistellarMove::new(f.clone(), g.clone()))
            }
            Operation::CentralRetriangulation { ball, vertex } => {
                central_retriangulation(k, ball, vertex)
            }
        }
    }

    /// Apply and record.
    pub fn record(self, k: &SimplicialComplex, log: &mut MoveLog) -> Result<SimplicialComplex> {
        let out = self.apply(k)?;
        log.push(MoveRecord {
            operation: self,
            resulting: f0_f1(&out),
        });
        Ok(out)
    }
}

/// Re-run a log from `start`, checking each recorded `(f_0, f_1)`.
pub fn replay(start: &SimplicialComplex, log: &[MoveRecord]) -> Result<SimplicialComplex> {
    let mut k = start.clone();
    for (step, rec) in log.iter().enumerate() {
        k = rec.operation.apply(&k).map_err(|e| Error::Replay {
            step,
            message: e.to_string(),
        })?;
        let got = f0_f1(&k);
        if got != rec.resulting {
            return Err(Error::Replay {
                step,
                message: format!(
                    "recorded (f0, f1) = {:?}, replay gives {got:?}",
                    rec.resulting
                ),
            });
        }
    }
    Ok(k)
}

pub fn parse_move_log(text: &str) -> Result<MoveLog> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::bistellar::simplex_boundary;

    #[test]
    fn round_trip_and_replay() {
        let k = simplex_boundary(4).unwrap();
        let mut log = MoveLog::new();
        let k1 = Operation::Bistellar {
            f: Face::of([1, 2, 3, 4]),
            g: Face::of([6]),
        }
        .record(&k, &mut log)
        .unwrap();
        let k2 = Operation::CentralRetriangulation {
            ball: vec![Face::of([1, 2, 3, 5])],
            vertex: Label::Str("w1".into()),
        }
        .record(&k1, &mut log)
        .unwrap();
        let json = serde_json::to_string(&log).unwrap();
        assert!(json.contains("\"op\":\"bistellar\""));
        let back = parse_move_log(&json).unwrap();
        assert_eq!(back, log);
        assert_eq!(replay(&k, &back).unwrap(), k2);
        let mut bad = back.clone();
        bad[1].resulting = (0, 0);
        assert!(matches!(
            replay(&k, &bad),
            Err(Error::Replay { step: 1, .. })
        ));
    }
}

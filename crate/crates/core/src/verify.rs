//! Randomized harness tying the stability oracle to the combinatorial
//! predictions, plus the exhaustive structural checks. Runs sequentially from
//! one seed, so reports are reproducible byte for byte.

use std::fmt;

use serde_json::{json, Value};

use crate::algebra::{qi, Rational};
use crate::assembly::{assembly_kit, glue, wall_cross};
use crate::higgs::{
    apply_automorphism, canonical_representative, jumping_cocycle, realizable_labels, MarkedPoints,
    Qph, RepSpec, Splitting,
};
use crate::io;
use crate::polytope::{all_chambers, stable_parabolic_bound, wall_crossing_graph, Parity};
use crate::sample::{self, SampleRng};
use crate::stability::{
    component_label, destabilizing_candidates, predicted_stability, stratum_label, verdict_from,
};

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub z1: Rational,
    pub seed: u64,
    pub samples: usize,
    pub parities: Vec<Parity>,
    pub deep: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            z1: qi(2),
            seed: 0,
            samples: 200,
            parities: Parity::both().to_vec(),
            deep: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub runs: usize,
    pub failures: usize,
    /// The smallest failing case seen.
    pub counterexample: Option<Value>,
}

impl CheckResult {
    fn new(name: &'static str) -> Self {
        CheckResult {
            name,
            runs: 0,
            failures: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, case: impl FnOnce() -> Value) {
        self.runs += 1;
        if ok {
            return;
        }
        self.failures += 1;
        let c = case();
        let size = |v: &Value| v.to_string().len();
        if self
            .counterexample
            .as_ref()
            .is_none_or(|old| size(&c) < size(old))
        {
            self.counterexample = Some(c);
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    /// Chamber × label prediction table, when run deep.
    pub table: Option<Value>,
}

impl VerifyReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().map(|c| c.failures).sum()
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "runs": c.runs, "failures": c.failures, "counterexample": c.counterexample}))
            .collect();
        json!({"seed": self.seed, "checks": checks, "failures": self.failures(), "table": self.table})
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {}", self.seed)?;
        for c in &self.checks {
            writeln!(
                f,
                "{:<24} {:>7} runs {:>4} failures",
                c.name, c.runs, c.failures
            )?;
            if let Some(x) = &c.counterexample {
                writeln!(f, "  counterexample: {x}")?;
            }
        }
        write!(f, "{} failures", self.failures())
    }
}

fn splittings(parity: Parity) -> Vec<Splitting> {
    let mut out = Vec::new();
    for m in [0i64, 1] {
        let d = 2 * m + i64::from(parity == Parity::Odd);
        for gap in (0..=3).filter(|g| (d - g) % 2 == 0) {
            out.push(Splitting::with_gap(d, gap).expect("gap has the parity of d"));
        }
    }
    out
}

fn oracle_check(
    cfg: &VerifyConfig,
    marks: &MarkedPoints,
    r: &mut SampleRng,
) -> (CheckResult, CheckResult) {
    let mut agree = CheckResult::new("oracle-vs-prediction");
    let mut equi = CheckResult::new("automorphism-invariance");
    for k in 0..cfg.samples {
        let parity = cfg.parities[k % cfg.parities.len()];
        let ss = splittings(parity);
        let s = ss[(k / cfg.parities.len()) % ss.len()];
        let x = sample::qph(r, s, marks);
        let chambers = all_chambers(parity);
        let c = chambers[k % chambers.len()];
        let b = sample::weight_in(r, &c);
        let label = component_label(&x);
        let cands = destabilizing_candidates(&x);
        let (label, cands) = match (label, cands) {
            (Ok(l), Ok(c)) => (l, c),
            (l, c) => {
                agree.record(
                    false,
                    || json!({"qph": io::qph(&x), "error": format!("{:?} {:?}", l.err(), c.err())}),
                );
                continue;
            }
        };
        let got = verdict_from(&cands, &b, s.degree());
        let want = predicted_stability(&label, &c).unwrap_or(!got.is_stable());
        agree.record(got.is_stable() == want, || {
            json!({"qph": io::qph(&x), "beta": b.to_string(), "chamber": c.to_string(), "label": label.to_string(), "oracle": got.to_json()})
        });
        let g = sample::automorphism(r, s);
        let moved = apply_automorphism(&g, &x);
        let same = moved.as_ref().is_ok_and(|y| {
            component_label(y).ok() == Some(label)
                && stratum_label(y).ok() == stratum_label(&x).ok()
                && y.det_scalar().ok() == x.det_scalar().ok()
                && destabilizing_candidates(y)
                    .is_ok_and(|cy| verdict_from(&cy, &b, s.degree()) == got)
        });
        equi.record(same, || json!({"qph": io::qph(&x), "beta": b.to_string()}));
    }
    (agree, equi)
}

fn bb_check(cfg: &VerifyConfig, marks: &MarkedPoints, r: &mut SampleRng) -> CheckResult {
    let mut out = CheckResult::new("stable-bundle-bound");
    for k in 0..cfg.samples {
        let parity = cfg.parities[k % cfg.parities.len()];
        let s = Splitting::with_gap(
            i64::from(parity == Parity::Odd),
            i64::from(parity == Parity::Odd),
        )
        .expect("balanced");
        let x = Qph::bare(s, marks.clone(), sample::uprime_flags(r, s, marks));
        let b = sample::weight(r, 12);
        let got = crate::stability::destabilizing_search(&x, &b).map(|v| v.is_stable());
        let want = stable_parabolic_bound(&b, s.degree());
        out.record(
            got == Ok(want),
            || json!({"qph": io::qph(&x), "beta": b.to_string(), "bound": want}),
        );
    }
    out
}

fn structural_checks(cfg: &VerifyConfig) -> Vec<CheckResult> {
    let mut d4 = CheckResult::new("d4-census");
    let mut cross = CheckResult::new("wall-crossing-involution");
    for &p in &cfg.parities {
        for c in all_chambers(p) {
            let r = glue(&assembly_kit(&c));
            d4.record(r.as_ref().is_ok_and(|g| crate::assembly::euler_characteristic(g) == 6), || {
                json!({"chamber": c.to_string(), "error": r.as_ref().err().map(|e| e.to_string())})
            });
        }
        let g = wall_crossing_graph(p);
        for (i, j, _) in &g.edges {
            let (a, b) = (g.nodes[*i], g.nodes[*j]);
            let ok = match (wall_cross(&a, &b), wall_cross(&b, &a)) {
                (Ok(x), Ok(y)) => {
                    let mut fwd = x.exchanged.clone();
                    let mut back: Vec<(String, String)> =
                        y.exchanged.into_iter().map(|(u, v)| (v, u)).collect();
                    fwd.sort();
                    back.sort();
                    fwd == back && !fwd.is_empty()
                }
                _ => false,
            };
            cross.record(ok, || json!({"from": a.to_string(), "to": b.to_string()}));
        }
    }
    let mut cocycle = CheckResult::new("jumping-cocycle");
    for &p in &cfg.parities {
        for t in 1..=5 {
            let rep = jumping_cocycle(p, 0, &qi(t));
            cocycle.record(
                rep.printed_holds,
                || json!({"parity": p.to_string(), "m": 0, "t": t}),
            );
            for m in 1..=5 {
                let rep = jumping_cocycle(p, m, &qi(t));
                cocycle.record(
                    rep.corrected_holds,
                    || json!({"parity": p.to_string(), "m": m, "t": t}),
                );
            }
        }
    }
    vec![d4, cross, cocycle]
}

/// Every realizable label in every chamber, oracle next to prediction.
fn deep_table(cfg: &VerifyConfig, marks: &MarkedPoints, r: &mut SampleRng) -> (CheckResult, Value) {
    let mut check = CheckResult::new("prediction-table");
    let mut rows = Vec::new();
    for &p in &cfg.parities {
        for s in splittings(p).into_iter().filter(|s| s.degree() < 2) {
            for label in realizable_labels(s) {
                let x = match canonical_representative(
                    &RepSpec::Block {
                        label,
                        splitting: s,
                        modulus: None,
                    },
                    marks,
                ) {
                    Ok(x) => x,
                    Err(e) => {
                        check.record(
                            false,
                            || json!({"label": label.to_string(), "error": e.to_string()}),
                        );
                        continue;
                    }
                };
                let cands = destabilizing_candidates(&x).unwrap_or_default();
                let mut cells = serde_json::Map::new();
                for c in all_chambers(p) {
                    let b = sample::weight_in(r, &c);
                    let got = verdict_from(&cands, &b, s.degree()).is_stable();
                    let want = predicted_stability(&label, &c).unwrap_or(!got);
                    check.record(
                        got == want,
                        || json!({"label": label.to_string(), "chamber": c.to_string()}),
                    );
                    cells.insert(c.to_string(), Value::Bool(want));
                }
                rows.push(json!({"splitting": s.to_string(), "label": label.to_string(), "stable": cells}));
            }
        }
    }
    (check, Value::Array(rows))
}

pub fn run(cfg: &VerifyConfig) -> crate::Result<VerifyReport> {
    let marks = MarkedPoints::new(cfg.z1.clone())?;
    let mut r = sample::rng(cfg.seed);
    let (agree, equi) = oracle_check(cfg, &marks, &mut r);
    let mut checks = vec![agree, equi, bb_check(cfg, &marks, &mut r)];
    checks.extend(structural_checks(cfg));
    let table = if cfg.deep {
        let (c, t) = deep_table(cfg, &marks, &mut r);
        checks.push(c);
        Some(t)
    } else {
        None
    };
    Ok(VerifyReport {
        seed: cfg.seed,
        checks,
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_is_clean_and_reproducible() {
        let cfg = VerifyConfig {
            samples: 48,
            seed: 7,
            ..VerifyConfig::default()
        };
        let a = run(&cfg).unwrap();
        assert_eq!(a.failures(), 0, "{a}");
        assert_eq!(
            io::render(&a.to_json()),
            io::render(&run(&cfg).unwrap().to_json())
        );
    }
}

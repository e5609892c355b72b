use serde_json::json;

use super::sat::{self, SatOutcome, SatStats};
use crate::error::{Error, Result};
use crate::relation::{check_conditions, ExplicitInstance, ExplicitRelation, ExplicitWitness, Mode, Solution};

/// Variable roles of the encoding, each entry carrying its DIMACS index.
///
/// * `x(i,b)` — `(i,b) ∈ R1`
/// * `y(b,o)` — `(b,o) ∈ R2`
/// * `d(b)`   — `b ∈ Dom(R2)` is required
/// * `z(i,b,o)` — `(i,o) ∈ R` is witnessed through `b` (total mode only)
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VarMap {
    pub x: Vec<(usize, usize, u32)>,
    pub y: Vec<(usize, usize, u32)>,
    pub d: Vec<(usize, u32)>,
    pub z: Vec<(usize, usize, usize, u32)>,
}

impl VarMap {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "x": self.x.iter().map(|&(i, b, v)| [i as u64, b as u64, v as u64]).collect::<Vec<_>>(),
            "y": self.y.iter().map(|&(b, o, v)| [b as u64, o as u64, v as u64]).collect::<Vec<_>>(),
            "d": self.d.iter().map(|&(b, v)| [b as u64, v as u64]).collect::<Vec<_>>(),
            "z": self.z.iter().map(|&(i, b, o, v)| [i as u64, b as u64, o as u64, v as u64]).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    pub var_count: usize,
    pub clauses: Vec<Vec<i32>>,
    pub var_map: VarMap,
}

impl CnfFormula {
    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.var_count, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                s.push_str(&l.to_string());
                s.push(' ');
            }
            s.push_str("0\n");
        }
        s
    }

    /// Reads `R1` and `R2` off a model; auxiliary variables are ignored.
    pub fn decode(&self, inst: &ExplicitInstance, model: &[bool]) -> ExplicitWitness {
        let mut r1 = ExplicitRelation::empty(inst.input().clone(), inst.intermediate().clone());
        let mut r2 = ExplicitRelation::empty(inst.intermediate().clone(), inst.output().clone());
        for &(i, b, v) in &self.var_map.x {
            if model[v as usize - 1] {
                r1.insert(i, b);
            }
        }
        for &(b, o, v) in &self.var_map.y {
            if model[v as usize - 1] {
                r2.insert(b, o);
            }
        }
        ExplicitWitness { r1, r2 }
    }
}

pub fn encode_cnf(inst: &ExplicitInstance) -> CnfFormula {
    let (ni, nb, no) = (inst.input().len(), inst.intermediate().len(), inst.output().len());
    let r = inst.relation();
    let x = |i: usize, b: usize| (i * nb + b + 1) as i32;
    let y = |b: usize, o: usize| (ni * nb + b * no + o + 1) as i32;
    let d = |b: usize| (ni * nb + nb * no + b + 1) as i32;
    let mut var_count = ni * nb + nb * no + nb;

    let mut map = VarMap::default();
    for i in 0..ni {
        for b in 0..nb {
            map.x.push((i, b, x(i, b) as u32));
        }
    }
    for b in 0..nb {
        for o in 0..no {
            map.y.push((b, o, y(b, o) as u32));
        }
    }
    for b in 0..nb {
        map.d.push((b, d(b) as u32));
    }

    let mut clauses = Vec::new();
    // R1 ∘ R2 ⊆ R
    for i in 0..ni {
        for o in 0..no {
            if !r.contains(i, o) {
                for b in 0..nb {
                    clauses.push(vec![-x(i, b), -y(b, o)]);
                }
            }
        }
    }
    match inst.mode() {
        Mode::Td => {
            // R ⊆ R1 ∘ R2
            for (i, o) in r.pairs() {
                let mut cover = Vec::with_capacity(nb);
                for b in 0..nb {
                    var_count += 1;
                    let z = var_count as i32;
                    map.z.push((i, b, o, z as u32));
                    cover.push(z);
                    clauses.push(vec![-z, x(i, b)]);
                    clauses.push(vec![-z, y(b, o)]);
                }
                clauses.push(cover);
            }
        }
        Mode::Pd => {
            // Dom(R1) = Dom(R)
            for i in 0..ni {
                if r.row(i).is_empty() {
                    for b in 0..nb {
                        clauses.push(vec![-x(i, b)]);
                    }
                } else {
                    clauses.push((0..nb).map(|b| x(i, b)).collect());
                }
            }
        }
    }
    // Img(R1) ⊆ Dom(R2)
    for i in 0..ni {
        for b in 0..nb {
            clauses.push(vec![-x(i, b), d(b)]);
        }
    }
    for b in 0..nb {
        let mut c = vec![-d(b)];
        c.extend((0..no).map(|o| y(b, o)));
        clauses.push(c);
    }

    CnfFormula { var_count, clauses, var_map: map }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub conflict_limit: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { conflict_limit: 2_000_000 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub vars: usize,
    pub clauses: usize,
    pub sat: SatStats,
}

/// Decides the instance exactly. Feasible witnesses are always re-checked
/// against the decomposition conditions before being returned.
pub fn solve_explicit(inst: &ExplicitInstance) -> Result<Solution> {
    solve_explicit_with(inst, SolveOptions::default()).map(|(s, _)| s)
}

pub fn solve_explicit_with(inst: &ExplicitInstance, opts: SolveOptions) -> Result<(Solution, SolveStats)> {
    let cnf = encode_cnf(inst);
    let (outcome, sat) = sat::solve(cnf.var_count, &cnf.clauses, opts.conflict_limit)?;
    let stats = SolveStats { vars: cnf.var_count, clauses: cnf.clauses.len(), sat };
    match outcome {
        SatOutcome::Unsat => Ok((Solution::Infeasible, stats)),
        SatOutcome::Sat(model) => {
            let w = cnf.decode(inst, &model);
            if !check_conditions(inst, &w)?.holds() {
                return Err(Error::InvalidInstance("decoded model failed re-verification".into()));
            }
            Ok((Solution::Feasible(w), stats))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::tests::{dom, example_instance};
    use crate::relation::{brute_force_solve, Domain};

    #[test]
    fn example_encoding_shape() {
        let cnf = encode_cnf(&example_instance(Mode::Td));
        assert_eq!(cnf.var_count, 7);
        assert_eq!(cnf.clauses.len(), 11);
        assert!(cnf.to_dimacs().starts_with("p cnf 7 11\n"));
        let (out, _) = sat::solve(cnf.var_count, &cnf.clauses, 100).unwrap();
        assert_eq!(out, SatOutcome::Unsat);
        assert_eq!(cnf.var_map.z.len(), 2);
        assert_eq!(cnf.var_map.z[0], (0, 0, 0, 6));
    }

    #[test]
    fn empty_relation_pd_is_satisfied_by_all_false() {
        let i = dom("I", &["i1", "i2"]);
        let o = dom("O", &["o1"]);
        let inst = ExplicitInstance::new(dom("B", &["b"]), ExplicitRelation::empty(i, o), Mode::Pd).unwrap();
        let cnf = encode_cnf(&inst);
        assert!(cnf.clauses.iter().all(|c| c.iter().any(|&l| l < 0)));
        let s = solve_explicit(&inst).unwrap();
        let w = s.witness().unwrap();
        assert!(w.r1.is_empty() && w.r2.is_empty());
    }

    #[test]
    fn full_relation_single_channel() {
        let i = dom("I", &["i1", "i2"]);
        let o = dom("O", &["o1", "o2"]);
        let inst = ExplicitInstance::new(dom("B", &["b"]), ExplicitRelation::full(i, o), Mode::Td).unwrap();
        let w = solve_explicit(&inst).unwrap().witness().cloned().unwrap();
        assert!(check_conditions(&inst, &w).unwrap().holds());
    }

    #[test]
    fn example_infeasible_both_modes() {
        for mode in [Mode::Td, Mode::Pd] {
            assert_eq!(solve_explicit(&example_instance(mode)).unwrap(), Solution::Infeasible);
        }
    }

    #[test]
    fn wide_channel_always_feasible() {
        let i = Domain::numbered("I", "i", 4);
        let o = Domain::numbered("O", "o", 3);
        let r = ExplicitRelation::from_pairs(i, o, [(0, 1), (1, 0), (1, 2), (3, 1), (2, 2)]).unwrap();
        let inst = ExplicitInstance::new(Domain::numbered("B", "b", 3), r, Mode::Td).unwrap();
        assert!(solve_explicit(&inst).unwrap().is_feasible());
    }

    #[test]
    fn random_instances_match_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let i = Domain::numbered("I", "i", 4);
            let o = Domain::numbered("O", "o", 4);
            let pairs: Vec<_> = (0..4).flat_map(|a| (0..4).map(move |b| (a, b))).filter(|_| rng.gen_bool(0.4)).collect();
            let r = ExplicitRelation::from_pairs(i, o, pairs).unwrap();
            for mode in [Mode::Td, Mode::Pd] {
                let inst = ExplicitInstance::new(Domain::numbered("B", "b", 2), r.clone(), mode).unwrap();
                assert_eq!(
                    solve_explicit(&inst).unwrap().is_feasible(),
                    brute_force_solve(&inst).unwrap().is_feasible(),
                    "{r:?} {mode:?}"
                );
            }
        }
    }

    #[test]
    fn var_map_json_shape() {
        let cnf = encode_cnf(&example_instance(Mode::Pd));
        let v = cnf.var_map.to_json();
        assert_eq!(v["x"][1], json!([1, 0, 2]));
        assert_eq!(v["d"][0], json!([0, 5]));
        assert_eq!(v["z"], json!([]));
    }
}

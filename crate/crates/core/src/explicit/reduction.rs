//! Instance converters from biclique covering and set cover, with witness
//! back-mapping.

use crate::error::{Error, Result};
use crate::relation::{
    check_conditions, Domain, ExplicitInstance, ExplicitRelation, ExplicitWitness, Mode,
};

/// Covering a bipartite graph by `k` complete bipartite subgraphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CcbsInstance {
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub edges: Vec<(usize, usize)>,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Biclique {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl CcbsInstance {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidInstance("k must be positive".into()));
        }
        let mut l = vec![false; self.left.len()];
        let mut r = vec![false; self.right.len()];
        for &(a, b) in &self.edges {
            if a >= l.len() || b >= r.len() {
                return Err(Error::InvalidInstance(format!("edge ({a},{b}) out of range")));
            }
            l[a] = true;
            r[b] = true;
        }
        if let Some(v) = l.iter().position(|x| !x) {
            return Err(Error::InvalidInstance(format!("left vertex `{}` has no incident edge", self.left[v])));
        }
        if let Some(v) = r.iter().position(|x| !x) {
            return Err(Error::InvalidInstance(format!("right vertex `{}` has no incident edge", self.right[v])));
        }
        Ok(())
    }

    fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a, b))
    }

    /// Every biclique is complete within `E` and together they cover `E`.
    pub fn is_cover(&self, cover: &[Biclique]) -> bool {
        cover.len() <= self.k
            && cover
                .iter()
                .all(|c| c.left.iter().all(|&a| c.right.iter().all(|&b| self.has_edge(a, b))))
            && self
                .edges
                .iter()
                .all(|&(a, b)| cover.iter().any(|c| c.left.contains(&a) && c.right.contains(&b)))
    }
}

/// `I = V1`, `O = V2`, `R = E`, `|B| = k`, total mode.
pub fn from_ccbs(g: &CcbsInstance) -> Result<ExplicitInstance> {
    g.validate()?;
    let input = Domain::new("V1", g.left.iter().cloned())?;
    let output = Domain::new("V2", g.right.iter().cloned())?;
    let r = ExplicitRelation::from_pairs(input, output, g.edges.iter().copied())?;
    ExplicitInstance::new(Domain::numbered("U", "u", g.k), r, Mode::Td)
}

/// `V1^j = {v | (v,u_j) ∈ R1}`, `V2^j = {v | (u_j,v) ∈ R2}`; empty bicliques are dropped.
pub fn witness_to_biclique_cover(g: &CcbsInstance, w: &ExplicitWitness) -> Result<Vec<Biclique>> {
    let inst = from_ccbs(g)?;
    if !check_conditions(&inst, w)?.holds() {
        return Err(Error::InvalidInstance("witness does not meet the total condition".into()));
    }
    let cover: Vec<Biclique> = (0..g.k)
        .map(|u| Biclique {
            left: (0..g.left.len()).filter(|&v| w.r1.contains(v, u)).collect(),
            right: w.r2.row(u).iter().collect(),
        })
        .filter(|c| !c.left.is_empty() && !c.right.is_empty())
        .collect();
    debug_assert!(g.is_cover(&cover));
    Ok(cover)
}

/// Choosing at most `k` subsets whose union is every element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetCoverInstance {
    pub elements: Vec<String>,
    pub subsets: Vec<Vec<usize>>,
    pub k: usize,
}

impl SetCoverInstance {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidInstance("k must be positive".into()));
        }
        if self.subsets.is_empty() {
            return Err(Error::InvalidInstance("no subsets given".into()));
        }
        for s in &self.subsets {
            if let Some(e) = s.iter().find(|&&e| e >= self.elements.len()) {
                return Err(Error::InvalidInstance(format!("element index {e} out of range")));
            }
        }
        for (e, name) in self.elements.iter().enumerate() {
            if !self.subsets.iter().any(|s| s.contains(&e)) {
                return Err(Error::InvalidInstance(format!("element `{name}` belongs to no subset")));
            }
        }
        Ok(())
    }

    pub fn is_cover(&self, chosen: &[usize]) -> bool {
        chosen.len() <= self.k
            && chosen.iter().all(|&c| c < self.subsets.len())
            && (0..self.elements.len()).all(|e| chosen.iter().any(|&c| self.subsets[c].contains(&e)))
    }
}

/// `I = S`, `O = C`, `R = {(a,c) | a ∈ c}`, `|B| = k`, partial mode.
pub fn from_set_cover(s: &SetCoverInstance) -> Result<ExplicitInstance> {
    s.validate()?;
    let input = Domain::new("S", s.elements.iter().cloned())?;
    let output = Domain::numbered("C", "c", s.subsets.len());
    let pairs = s.subsets.iter().enumerate().flat_map(|(c, es)| es.iter().map(move |&a| (a, c)));
    let r = ExplicitRelation::from_pairs(input, output, pairs)?;
    ExplicitInstance::new(Domain::numbered("B", "b", s.k), r, Mode::Pd)
}

/// For every `b ∈ Img(R1)` pick the first subset in `Img_b(R2)`.
pub fn witness_to_cover(s: &SetCoverInstance, w: &ExplicitWitness) -> Result<Vec<usize>> {
    let inst = from_set_cover(s)?;
    if !check_conditions(&inst, w)?.holds() {
        return Err(Error::InvalidInstance("witness does not meet the partial condition".into()));
    }
    let mut chosen: Vec<usize> = w.r1.img().iter().filter_map(|b| w.r2.row(b).first()).collect();
    chosen.sort_unstable();
    chosen.dedup();
    debug_assert!(s.is_cover(&chosen));
    Ok(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explicit::solve_explicit;
    use crate::relation::brute_force_solve;

    fn names(p: &str, n: usize) -> Vec<String> {
        (0..n).map(|k| format!("{p}{k}")).collect()
    }

    #[test]
    fn star_has_single_biclique() {
        let g = CcbsInstance { left: names("u", 1), right: names("v", 2), edges: vec![(0, 0), (0, 1)], k: 1 };
        let inst = from_ccbs(&g).unwrap();
        let w = brute_force_solve(&inst).unwrap().witness().cloned().unwrap();
        let cover = witness_to_biclique_cover(&g, &w).unwrap();
        assert_eq!(cover, vec![Biclique { left: vec![0], right: vec![0, 1] }]);
    }

    #[test]
    fn matching_needs_two() {
        let g = CcbsInstance { left: names("u", 2), right: names("v", 2), edges: vec![(0, 0), (1, 1)], k: 1 };
        assert!(!brute_force_solve(&from_ccbs(&g).unwrap()).unwrap().is_feasible());
        let g2 = CcbsInstance { k: 2, ..g };
        let w = solve_explicit(&from_ccbs(&g2).unwrap()).unwrap().witness().cloned().unwrap();
        assert!(g2.is_cover(&witness_to_biclique_cover(&g2, &w).unwrap()));
    }

    #[test]
    fn single_edge() {
        let g = CcbsInstance { left: names("u", 1), right: names("v", 1), edges: vec![(0, 0)], k: 1 };
        assert!(brute_force_solve(&from_ccbs(&g).unwrap()).unwrap().is_feasible());
    }

    #[test]
    fn isolated_vertex_rejected() {
        let g = CcbsInstance { left: names("u", 2), right: names("v", 1), edges: vec![(0, 0)], k: 1 };
        assert!(from_ccbs(&g).is_err());
    }

    #[test]
    fn set_cover_examples() {
        let one = SetCoverInstance { elements: names("a", 2), subsets: vec![vec![0, 1]], k: 1 };
        let w = brute_force_solve(&from_set_cover(&one).unwrap()).unwrap().witness().cloned().unwrap();
        assert_eq!(witness_to_cover(&one, &w).unwrap(), vec![0]);

        let split = SetCoverInstance { elements: names("a", 2), subsets: vec![vec![0], vec![1]], k: 1 };
        assert!(!brute_force_solve(&from_set_cover(&split).unwrap()).unwrap().is_feasible());

        let all = SetCoverInstance { k: 2, ..split };
        let w = solve_explicit(&from_set_cover(&all).unwrap()).unwrap().witness().cloned().unwrap();
        assert_eq!(witness_to_cover(&all, &w).unwrap(), vec![0, 1]);
    }

    #[test]
    fn uncovered_element_rejected() {
        let s = SetCoverInstance { elements: names("a", 2), subsets: vec![vec![0]], k: 1 };
        assert!(from_set_cover(&s).is_err());
    }
}

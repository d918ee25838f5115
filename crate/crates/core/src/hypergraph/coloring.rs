use super::UniformHypergraph;
use crate::error::{Error, Result};

/// Default vertex-count cap for the exhaustive odd-coloring search.
pub const DEFAULT_COLORING_CAP: usize = 12;

/// A labeling `phi[v] ∈ 1..=r` with every edge's label sum ≡ r/2 (mod r).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddColoring {
    pub phi: Vec<usize>,
}

impl OddColoring {
    pub fn verify(&self, h: &UniformHypergraph) -> bool {
        let r = h.r();
        self.phi.len() == h.n()
            && self.phi.iter().all(|&c| (1..=r).contains(&c))
            && h.edges()
                .iter()
                .all(|e| e.iter().map(|&v| self.phi[v]).sum::<usize>() % r == r / 2)
    }
}

/// Exhaustive search for an odd coloring.
///
/// Labels are assigned vertex by vertex and each edge is checked as soon as
/// its largest vertex receives a label. Shifting every label of one component
/// by the same amount preserves all edge sums mod r, so the smallest vertex of
/// each component is pinned to label 1.
pub fn find_odd_coloring(h: &UniformHypergraph, cap: usize) -> Result<Option<OddColoring>> {
    let r = h.r();
    if !r.is_multiple_of(2) {
        return Err(Error::Uniformity {
            r,
            message: "odd-colorability is defined for even r only".into(),
        });
    }
    if h.n() > cap {
        return Err(Error::Capacity(format!(
            "odd-coloring search limited to n <= {cap}, got n = {}",
            h.n()
        )));
    }

    let n = h.n();
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, e) in h.edges().iter().enumerate() {
        closing[*e.last().expect("edges are non-empty")].push(k);
    }
    let mut pinned = vec![false; n];
    for c in h.components() {
        pinned[c.vertices[0]] = true;
    }

    // internal labels are 0..r; with r labels per edge the offset of 1 vanishes mod r
    let mut labels = vec![0usize; n];
    let target = r / 2;
    if assign(0, h, &closing, &pinned, target, &mut labels) {
        let coloring = OddColoring {
            phi: labels.iter().map(|c| c + 1).collect(),
        };
        assert!(
            coloring.verify(h),
            "odd coloring search produced an invalid labeling"
        );
        Ok(Some(coloring))
    } else {
        Ok(None)
    }
}

fn assign(
    v: usize,
    h: &UniformHypergraph,
    closing: &[Vec<usize>],
    pinned: &[bool],
    target: usize,
    labels: &mut [usize],
) -> bool {
    if v == labels.len() {
        return true;
    }
    let r = h.r();
    let choices = if pinned[v] { 1 } else { r };
    for c in 0..choices {
        labels[v] = c;
        let ok = closing[v]
            .iter()
            .all(|&k| h.edges()[k].iter().map(|&w| labels[w]).sum::<usize>() % r == target);
        if ok && assign(v + 1, h, closing, pinned, target, labels) {
            return true;
        }
    }
    false
}

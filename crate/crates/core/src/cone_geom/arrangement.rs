//! Subdivision of a cone by a finite set of hyperplanes.

use super::cone::Cone;
use std::collections::BTreeSet;

/// The closed cells of `cone` cut out by `hyps`; all have the dimension of `cone`.
pub fn refine(cone: &Cone, hyps: &[Vec<i64>]) -> Vec<Cone> {
    let mut cells = vec![cone.clone()];
    let mut seen = BTreeSet::new();
    for h in hyps {
        if !seen.insert(h.clone()) {
            continue;
        }
        let mut next = Vec::with_capacity(cells.len());
        for c in cells {
            match c.split(h) {
                Some((a, b)) => {
                    next.push(a);
                    next.push(b);
                }
                None => next.push(c),
            }
        }
        cells = next;
    }
    cells
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_cut_by_three_lines() {
        let cells = refine(&Cone::full(2), &[vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(cells.len(), 6);
        assert!(cells.iter().all(|c| c.dimension() == 2));
        let half = refine(&Cone::halfspace(2, &[0, 1]), &[vec![1, 0], vec![1, 0]]);
        assert_eq!(half.len(), 2);
    }
}

//! Grothendieck group of a commutative presentation: ℤ^B modulo the
//! lattice of relation vectors.
//!
//! The semigroup embeds in this group only when it is cancellative; that
//! hypothesis is not checked here.

use alloc::vec::Vec;

use super::GroupError;
use crate::words::SemigroupPresentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Commutativity {
    /// Every pair of generators must have a commutation relation.
    FromRelations,
    /// The caller asserts the presentation is commutative.
    Declared,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianStructure {
    pub rank: usize,
    /// Invariant factors `d_1 | d_2 | …`, each ≥ 2.
    pub torsion: Vec<i64>,
    /// Image of each generator: torsion coordinates (reduced modulo the
    /// factors) followed by `rank` free coordinates.
    pub basis: Vec<Vec<i64>>,
}

pub fn grothendieck_group(p: &SemigroupPresentation, mode: Commutativity) -> Result<AbelianStructure, GroupError> {
    if mode == Commutativity::FromRelations && !p.has_all_commutators() {
        return Err(GroupError::NotDeclaredCommutative);
    }
    let n = p.rank();
    let m = p.relation_matrix();
    let (factors, right) = if m.rows() == 0 {
        (Vec::new(), super::snf::IntMatrix::identity(n))
    } else {
        let s = m.smith();
        (s.invariant_factors(), s.right)
    };
    let nonzero = factors.len();
    let rank = n - nonzero;
    let torsion_idx: Vec<usize> = (0..nonzero).filter(|&i| factors[i] > 1).collect();
    let torsion: Vec<i64> = torsion_idx.iter().map(|&i| factors[i]).collect();
    let basis = (0..n)
        .map(|g| {
            let row = right.row(g);
            let mut coords: Vec<i64> = torsion_idx.iter().map(|&i| row[i].rem_euclid(factors[i])).collect();
            coords.extend_from_slice(&row[nonzero..]);
            coords
        })
        .collect();
    Ok(AbelianStructure { rank, torsion, basis })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_commutative_monoids() {
        for d in 1..=3 {
            let s = grothendieck_group(&SemigroupPresentation::free_commutative(d), Commutativity::FromRelations).unwrap();
            assert_eq!(s.rank, d);
            assert!(s.torsion.is_empty());
        }
    }

    #[test]
    fn torsion_example() {
        let p = SemigroupPresentation::parse("gens: x y; rels: x^2 = y^2; xy = yx;").unwrap();
        let s = grothendieck_group(&p, Commutativity::FromRelations).unwrap();
        assert_eq!(s.rank, 1);
        assert_eq!(s.torsion, alloc::vec![2]);
        // x and y differ by the order-2 element
        assert_eq!(s.basis[0][1], s.basis[1][1]);
        assert_ne!(s.basis[0][0], s.basis[1][0]);
    }

    #[test]
    fn requires_commutativity() {
        let p = SemigroupPresentation::free(2);
        assert_eq!(grothendieck_group(&p, Commutativity::FromRelations), Err(GroupError::NotDeclaredCommutative));
        let s = grothendieck_group(&p, Commutativity::Declared).unwrap();
        assert_eq!(s.rank, 2);
    }

    #[test]
    fn row_operations_do_not_change_invariants() {
        let a = SemigroupPresentation::parse("gens: x y z; rels: x^4 = y^2; xy = yx; xz = zx; yz = zy; z^3 = x^3;").unwrap();
        let b = SemigroupPresentation::parse("gens: x y z; rels: x^3 = z^3; zy = yz; y^2 = x^4; zx = xz; yx = xy;").unwrap();
        let sa = grothendieck_group(&a, Commutativity::FromRelations).unwrap();
        let sb = grothendieck_group(&b, Commutativity::FromRelations).unwrap();
        assert_eq!((sa.rank, &sa.torsion), (sb.rank, &sb.torsion));
    }
}

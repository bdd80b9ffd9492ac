//! Nilpotency of elements and left ideals, and extraction of a
//! non-nilpotent element from a non-nilpotent left ideal.

use std::sync::Arc;

use thiserror::Error;

use crate::grouplin::{canonical_subgroup, Coords, GroupMap, GroupShape};
use crate::structures::{FiniteRing, LeftIdeal};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NilpotencyError {
    #[error("the left ideal is nilpotent")]
    Nilpotent,
}

/// An element `x` with `x^exponent = power != 0`, which proves `x` is not
/// nilpotent once `exponent` exceeds the length of the ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonNilpotentCertificate {
    pub element: Coords,
    pub exponent: u64,
    pub power: Coords,
}

impl NonNilpotentCertificate {
    pub fn verify(&self, ring: &FiniteRing) -> bool {
        self.exponent == nilpotency_exponent(ring)
            && ring.pow(&self.element, self.exponent) == self.power
            && !ring.shape().is_zero(&self.power)
    }
}

/// `floor(log2 |R|) + 1`; every nilpotent element vanishes at this power.
pub fn nilpotency_exponent(ring: &FiniteRing) -> u64 {
    ring.length_bound() + 1
}

pub fn element_is_nilpotent(ring: &FiniteRing, x: &[u64]) -> bool {
    ring.shape().is_zero(&ring.pow(x, nilpotency_exponent(ring)))
}

pub fn ideal_is_nilpotent(ideal: &LeftIdeal) -> bool {
    ideal.power_chain().1.is_zero()
}

/// Walks down the chain `Ra ⊋ Rc ⊋ ...` inside a stable power `I^n` until
/// `I^n a = Ra`, then solves `x a = a` with `x ∈ I^n`.
pub fn find_non_nilpotent(ideal: &LeftIdeal) -> Result<NonNilpotentCertificate, NilpotencyError> {
    let ring: &Arc<FiniteRing> = ideal.ring();
    let (_, stable) = ideal.power_chain();
    if stable.is_zero() {
        return Err(NilpotencyError::Nilpotent);
    }
    let basis = stable.rows();
    let shape = ring.shape();

    let mut a = basis
        .iter()
        .flat_map(|b| basis.iter().map(move |a| (b, a)))
        .find(|(b, a)| !shape.is_zero(&ring.mul(b, a)))
        .map(|(_, a)| a.clone())
        .expect("a stable nonzero power contains a nonzero product");

    let mut ra = LeftIdeal::generated(ring, std::slice::from_ref(&a)).expect("ring shape");
    loop {
        let products: Vec<Coords> = basis.iter().map(|alpha| ring.mul(alpha, &a)).collect();
        let ina = canonical_subgroup(shape, &products).expect("ring shape");
        if &ina == ra.basis() {
            let orders = GroupShape::new(basis.iter().map(|b| shape.element_order(b)).collect()).expect("bounded");
            let map = GroupMap::new(orders, shape.clone(), products).expect("orders annihilate").analyze();
            let coeffs = map.preimage(&a).expect("a lies in I^n a");
            let mut x = shape.zero();
            for (&c, b) in coeffs.iter().zip(&basis) {
                shape.add_scaled(&mut x, c, b);
            }
            debug_assert_eq!(ring.mul(&x, &a), a);
            let exponent = nilpotency_exponent(ring);
            let power = ring.pow(&x, exponent);
            assert!(!shape.is_zero(&power), "x a = a with a != 0 forces x to be non-nilpotent");
            return Ok(NonNilpotentCertificate { element: x, exponent, power });
        }
        let c = ina
            .rows()
            .into_iter()
            .find(|c| basis.iter().any(|alpha| !shape.is_zero(&ring.mul(alpha, c))))
            .expect("I^n a is not killed by I^n");
        let rc = LeftIdeal::generated(ring, std::slice::from_ref(&c)).expect("ring shape");
        assert!(rc.order() < ra.order(), "the cyclic ideals must shrink strictly");
        a = c;
        ra = rc;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn element_examples() {
        let r = zn(4);
        assert!(element_is_nilpotent(&r, &[2]));
        assert!(element_is_nilpotent(&r, &[0]));
        assert!(!element_is_nilpotent(&r, &[1]));
        let m = matrix_ring_f2();
        assert!(!element_is_nilpotent(&m, &e11()));
        assert!(element_is_nilpotent(&m, &[0, 1, 0, 0]));
    }

    #[test]
    fn ideal_examples() {
        let r = Arc::new(zn(4));
        assert!(ideal_is_nilpotent(&LeftIdeal::generated(&r, &[vec![2]]).unwrap()));
        let d = Arc::new(dual_numbers_f2());
        assert!(ideal_is_nilpotent(&LeftIdeal::generated(&d, &[vec![0, 1]]).unwrap()));
        let m = Arc::new(matrix_ring_f2());
        assert!(!ideal_is_nilpotent(&LeftIdeal::generated(&m, &[e11()]).unwrap()));
    }

    #[test]
    fn finder_examples() {
        let r = Arc::new(zn(4));
        let cert = find_non_nilpotent(&LeftIdeal::whole(&r)).unwrap();
        assert!(cert.verify(&r));
        // The only non-nilpotent elements of Z/4 are the units.
        assert_eq!(cert.element[0] % 2, 1);

        let m = Arc::new(matrix_ring_f2());
        let col = LeftIdeal::generated(&m, &[e11()]).unwrap();
        let cert = find_non_nilpotent(&col).unwrap();
        assert!(col.contains(&cert.element));
        assert!(cert.verify(&m));

        let d = Arc::new(dual_numbers_f2());
        let err = find_non_nilpotent(&LeftIdeal::generated(&d, &[vec![0, 1]]).unwrap()).unwrap_err();
        assert_eq!(err, NilpotencyError::Nilpotent);
    }

    #[test]
    fn finder_on_upper_triangular() {
        let u = Arc::new(upper_triangular(2));
        // The left ideal generated by E_12 + E_22 is not nilpotent.
        let i = LeftIdeal::generated(&u, &[vec![0, 1, 1]]).unwrap();
        let cert = find_non_nilpotent(&i).unwrap();
        assert!(i.contains(&cert.element));
        assert!(cert.verify(&u));
    }
}

//! Arithmetic for the residue fields F_q, q ∈ {2, 3, 4, 5}.
//!
//! Elements are coded as integers in `[0, q)`. For prime q the code is the
//! value itself. For q = 4 an element a0 + a1·t (t a root of t² + t + 1,
//! the usual defining polynomial) is coded as `a0 + 2·a1`, so the codes of
//! F_4 are 0, 1, t = 2, t + 1 = 3.

/// A small finite field with full lookup tables.
#[derive(Clone, Debug)]
pub struct Gf {
    pub q: u8,
    pub p: u8,
    pub r: u8,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    frob: Vec<u8>,
}

impl Gf {
    /// Build F_q for q in {2, 3, 4, 5}.
    pub fn new(q: u8) -> Gf {
        let (p, r) = match q {
            2 => (2, 1),
            3 => (3, 1),
            4 => (2, 2),
            5 => (5, 1),
            _ => panic!("unsupported field order {q}"),
        };
        let n = q as usize;
        let raw_add = |a: u8, b: u8| -> u8 {
            if r == 1 {
                (a + b) % p
            } else {
                // coefficient-wise mod p on base-p digits
                let (a0, a1) = (a % p, a / p);
                let (b0, b1) = (b % p, b / p);
                (a0 + b0) % p + p * ((a1 + b1) % p)
            }
        };
        let raw_mul = |a: u8, b: u8| -> u8 {
            if r == 1 {
                (a * b) % p
            } else {
                // F_4 with t^2 = t + 1
                let (a0, a1) = (a % 2, a / 2);
                let (b0, b1) = (b % 2, b / 2);
                let c0 = a0 * b0;
                let c1 = a0 * b1 + a1 * b0;
                let c2 = a1 * b1;
                // t^2 = t + 1
                ((c0 + c2) % 2) + 2 * ((c1 + c2) % 2)
            }
        };
        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        for a in 0..q {
            for b in 0..q {
                add[(a as usize) * n + b as usize] = raw_add(a, b);
                mul[(a as usize) * n + b as usize] = raw_mul(a, b);
            }
        }
        let mut neg = vec![0u8; n];
        let mut inv = vec![0u8; n];
        let mut frob = vec![0u8; n];
        for a in 0..q {
            for b in 0..q {
                if add[(a as usize) * n + b as usize] == 0 {
                    neg[a as usize] = b;
                }
                if mul[(a as usize) * n + b as usize] == 1 {
                    inv[a as usize] = b;
                }
            }
            let mut f = a;
            for _ in 1..p {
                f = mul[(f as usize) * n + a as usize];
            }
            frob[a as usize] = f; // a^p
        }
        Gf { q, p, r, add, mul, neg, inv, frob }
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[(a as usize) * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[(a as usize) * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; panics on 0.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "inverse of zero in F_{}", self.q);
        self.inv[a as usize]
    }

    /// The Frobenius x ↦ x^p.
    #[inline]
    pub fn frob(&self, a: u8) -> u8 {
        self.frob[a as usize]
    }

    /// x ↦ x^(p^e).
    pub fn frob_pow(&self, a: u8, e: u8) -> u8 {
        let mut x = a;
        for _ in 0..e {
            x = self.frob(x);
        }
        x
    }

    pub fn pow(&self, a: u8, mut e: u32) -> u8 {
        let mut acc = 1u8;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_all_q() {
        for q in [2u8, 3, 4, 5] {
            let f = Gf::new(q);
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                    // unit group order divides q - 1
                    assert_eq!(f.pow(a, (q - 1) as u32), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn f4_structure() {
        let f = Gf::new(4);
        // t^2 = t + 1 with t = 2
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1); // t * (t+1) = t^2 + t = 1
        assert_eq!(f.frob(2), 3); // t^2
    }
}

//! Degree-3 extensions GR(p², 3r) of the Galois rings, with Teichmüller
//! generators and base-ring coordinates.
//!
//! The extension realises PHG(2, R) as PHG(E/R) for E = GR(p², 3r): the
//! plane's points are the free rank-1 R-submodules of E. A generator θ of
//! the Teichmüller subgroup (the cyclic unit subgroup of order q³ − 1)
//! multiplies E R-linearly and therefore induces a collineation of the
//! plane; projectively its order is q² + q + 1 and it acts as a Singer
//! cycle on the quotient PG(2, q).

use crate::ring::{Ring, RingElement, RingError, RingKind, RingRef};

/// An element of the extension, as its coefficient digits (low to high)
/// over ℤ_{p²}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtElement(pub Vec<u16>);

/// GR(p², 3r) over a base Galois ring GR(p², r).
pub struct ExtensionRing {
    pub base: RingRef,
    /// 3r, the ℤ_{p²}-rank.
    pub dim: usize,
    pub p2: u16,
    /// Monic modulus of degree 3r over ℤ_{p²}; coefficients low to high,
    /// leading 1 implicit. Irreducible mod p.
    pub modulus: Vec<u16>,
    /// Teichmüller generator of the unit subgroup of order q³ − 1.
    pub theta: ExtElement,
    /// Multiplicative order of theta, q³ − 1.
    pub theta_order: u64,
    /// Image of the base generator ω in the extension (for r = 1 this is 1).
    embed_omega: ExtElement,
    /// Inverse of the coordinate matrix of the basis (1, θ, θ²) over the
    /// embedded base, as a dim×dim matrix over ℤ_{p²} (row-major).
    coord_inv: Vec<u16>,
}

impl ExtensionRing {
    /// Build the degree-3 extension of a Galois ring.
    pub fn new(base: RingRef) -> Result<ExtensionRing, RingError> {
        if base.spec.kind != RingKind::Galois {
            return Err(RingError::NotGalois);
        }
        let p = base.p;
        let p2 = p * p;
        let dim = 3 * base.r as usize;
        // Fixed lifts of irreducible (indeed primitive) polynomials over F_p.
        let modulus: Vec<u16> = match (p, base.r) {
            (2, 1) => vec![1, 1, 0],          // Y³ + Y + 1
            (3, 1) => vec![1, 2, 0],          // Y³ + 2Y + 1
            (5, 1) => vec![1, 1, 0],          // Y³ + Y + 1
            (2, 2) => vec![1, 1, 0, 0, 0, 0], // Y⁶ + Y + 1
            _ => return Err(RingError::UnsupportedSize { p, r: base.r }),
        };
        let mut ext = ExtensionRing {
            base,
            dim,
            p2,
            modulus,
            theta: ExtElement(vec![0]),
            theta_order: 0,
            embed_omega: ExtElement(vec![1]),
            coord_inv: Vec::new(),
        };
        let q3 = (ext.base.q as u64).pow(3);
        ext.theta_order = q3 - 1;

        // Find a unit whose Teichmüller lift generates the full cyclic
        // subgroup of order q³ − 1.
        let prime_factors: Vec<u64> = {
            let mut n = q3 - 1;
            let mut fs = Vec::new();
            let mut d = 2;
            while d * d <= n {
                if n % d == 0 {
                    fs.push(d);
                    while n % d == 0 {
                        n /= d;
                    }
                }
                d += 1;
            }
            if n > 1 {
                fs.push(n);
            }
            fs
        };
        let mut theta = None;
        'outer: for c in 0..p2 {
            // candidate x = Y + c
            let mut digits = vec![0u16; dim];
            digits[0] = c;
            digits[1] = 1;
            let x = ExtElement(digits);
            if !ext.is_unit(&x) {
                continue;
            }
            let t = ext.pow(&x, q3); // Teichmüller lift of the residue
            if !ext.is_unit(&t) {
                continue;
            }
            for &f in &prime_factors {
                if ext.pow(&t, (q3 - 1) / f) == ext.one() {
                    continue 'outer;
                }
            }
            theta = Some(t);
            break;
        }
        ext.theta = theta.expect("no Teichmüller generator found");

        // Embed the base: for r = 1 the constants embed digit-wise; for
        // r = 2 send ω to the Teichmüller element of order q... order 3.
        if ext.base.r == 2 {
            // ω must have multiplicative order q − 1 = 3 and satisfy the
            // base modulus; both elements of order 3 are roots, either is a
            // valid embedding. Take θ^((q³−1)/3).
            let e = ext.pow(&ext.theta, (q3 - 1) / 3);
            // sanity: e² + h1·e + h0 = 0
            let h0 = ext.scalar(ext.base.spec.modulus[0] % p2);
            let h1 = ext.scalar(ext.base.spec.modulus[1] % p2);
            let v = ext.add(&ext.add(&ext.mul(&e, &e), &ext.mul(&h1, &e)), &h0);
            assert!(v == ext.zero(), "order-3 Teichmüller element is not a modulus root");
            ext.embed_omega = e;
        }

        ext.coord_inv = ext.invert_basis_matrix();
        Ok(ext)
    }

    pub fn zero(&self) -> ExtElement {
        ExtElement(vec![0; self.dim])
    }

    pub fn one(&self) -> ExtElement {
        let mut d = vec![0; self.dim];
        d[0] = 1;
        ExtElement(d)
    }

    fn scalar(&self, c: u16) -> ExtElement {
        let mut d = vec![0; self.dim];
        d[0] = c % self.p2;
        ExtElement(d)
    }

    pub fn add(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        ExtElement(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| (x + y) % self.p2)
                .collect(),
        )
    }

    pub fn mul(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        let n = self.dim;
        let p2 = self.p2 as u32;
        let mut conv = vec![0u32; 2 * n - 1];
        for i in 0..n {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                conv[i + j] = (conv[i + j] + a.0[i] as u32 * b.0[j] as u32) % p2;
            }
        }
        // reduce by the monic modulus: Y^n = -Σ m_i Y^i
        for k in (n..2 * n - 1).rev() {
            let c = conv[k];
            if c == 0 {
                continue;
            }
            conv[k] = 0;
            for i in 0..n {
                let m = self.modulus[i] as u32;
                if m != 0 {
                    let sub = c * m % p2;
                    conv[k - n + i] = (conv[k - n + i] + p2 - sub) % p2;
                }
            }
        }
        ExtElement(conv[..n].iter().map(|&x| x as u16).collect())
    }

    pub fn pow(&self, a: &ExtElement, mut e: u64) -> ExtElement {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Units are exactly the elements with some digit not divisible by p.
    pub fn is_unit(&self, a: &ExtElement) -> bool {
        let p = self.base.p;
        a.0.iter().any(|&d| d % p != 0)
    }

    /// Ring homomorphism from the base into the extension.
    pub fn embed(&self, a: RingElement) -> ExtElement {
        let p2 = self.p2;
        let (c0, c1) = (a.0 % p2, a.0 / p2);
        let mut acc = self.scalar(c0);
        for _ in 0..c1 {
            acc = self.add(&acc, &self.embed_omega);
        }
        acc
    }

    /// Coordinates of an extension element in the base-module basis
    /// (1, θ, θ²).
    pub fn coords(&self, a: &ExtElement) -> [RingElement; 3] {
        let n = self.dim;
        let p2 = self.p2;
        let mut out = vec![0u16; n];
        for i in 0..n {
            let mut acc = 0u32;
            for j in 0..n {
                acc += self.coord_inv[i * n + j] as u32 * a.0[j] as u32;
            }
            out[i] = (acc % p2 as u32) as u16;
        }
        // regroup digit blocks of length r into base codes
        let r = self.base.r as usize;
        let mut res = [RingElement(0); 3];
        for (k, chunk) in out.chunks(r).enumerate() {
            let mut code = 0u16;
            let mut basepow = 1u16;
            for &d in chunk {
                code += d * basepow;
                basepow *= p2;
            }
            res[k] = RingElement(code);
        }
        res
    }

    /// Rebuild an extension element from base coordinates.
    pub fn from_coords(&self, c: [RingElement; 3]) -> ExtElement {
        let b0 = self.embed(c[0]);
        let b1 = self.mul(&self.embed(c[1]), &self.theta);
        let b2 = self.mul(&self.embed(c[2]), &self.pow(&self.theta, 2));
        self.add(&self.add(&b0, &b1), &b2)
    }

    /// The 3×3 base-ring matrix of multiplication by θ in the basis
    /// (1, θ, θ²): column j holds the coordinates of θ^{j+1}.
    pub fn theta_matrix(&self) -> [[RingElement; 3]; 3] {
        let mut m = [[RingElement(0); 3]; 3];
        for j in 0..3 {
            let col = self.coords(&self.pow(&self.theta, (j + 1) as u64));
            for i in 0..3 {
                m[i][j] = col[i];
            }
        }
        m
    }

    /// Invert the dim×dim coordinate matrix of (1, θ, θ²) over the embedded
    /// base, viewed ℤ_{p²}-linearly.
    fn invert_basis_matrix(&self) -> Vec<u16> {
        let n = self.dim;
        let r = self.base.r as usize;
        let p2 = self.p2 as i64;
        let p = self.base.p as i64;
        // columns: embed(ω^l)·θ^k for k in 0..3, l in 0..r
        let mut m = vec![0i64; n * n];
        for k in 0..3 {
            for l in 0..r {
                let col_idx = k * r + l;
                let mut w = self.one();
                for _ in 0..l {
                    w = self.mul(&w, &self.embed_omega);
                }
                let v = self.mul(&w, &self.pow(&self.theta, k as u64));
                for i in 0..n {
                    m[i * n + col_idx] = v.0[i] as i64;
                }
            }
        }
        // Gaussian elimination over ℤ_{p²} with unit pivots.
        let mut inv = vec![0i64; n * n];
        for i in 0..n {
            inv[i * n + i] = 1;
        }
        for col in 0..n {
            // find a row with unit pivot
            let pivot_row = (col..n)
                .find(|&row| m[row * n + col] % p != 0)
                .expect("basis matrix is not unimodular");
            for j in 0..n {
                m.swap(col * n + j, pivot_row * n + j);
                inv.swap(col * n + j, pivot_row * n + j);
            }
            let piv = m[col * n + col];
            let piv_inv = (0..p2).find(|&x| (x * piv) % p2 == 1).unwrap();
            for j in 0..n {
                m[col * n + j] = m[col * n + j] * piv_inv % p2;
                inv[col * n + j] = inv[col * n + j] * piv_inv % p2;
            }
            for row in 0..n {
                if row == col {
                    continue;
                }
                let f = m[row * n + col];
                if f == 0 {
                    continue;
                }
                for j in 0..n {
                    m[row * n + j] = (m[row * n + j] - f * m[col * n + j]).rem_euclid(p2);
                    inv[row * n + j] = (inv[row * n + j] - f * inv[col * n + j]).rem_euclid(p2);
                }
            }
        }
        inv.into_iter().map(|x| x as u16).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_orders() {
        for (name, order) in [("Z4", 7u64), ("Z9", 26), ("Z25", 124), ("G4", 63)] {
            let base = Ring::by_name(name).unwrap();
            let ext = ExtensionRing::new(base).unwrap();
            assert_eq!(ext.theta_order, order);
            // check the order is exact
            assert_eq!(ext.pow(&ext.theta, order), ext.one());
            for d in 1..order {
                if order % d == 0 && d < order {
                    assert_ne!(ext.pow(&ext.theta, d), ext.one(), "{name} divisor {d}");
                }
            }
        }
    }

    #[test]
    fn embedding_is_homomorphism() {
        for name in ["Z4", "Z9", "Z25", "G4"] {
            let base = Ring::by_name(name).unwrap();
            let ext = ExtensionRing::new(base.clone()).unwrap();
            for a in base.elements() {
                for b in base.elements() {
                    assert_eq!(
                        ext.embed(base.add(a, b)),
                        ext.add(&ext.embed(a), &ext.embed(b))
                    );
                    assert_eq!(
                        ext.embed(base.mul(a, b)),
                        ext.mul(&ext.embed(a), &ext.embed(b))
                    );
                }
            }
        }
    }

    #[test]
    fn coords_roundtrip() {
        for name in ["Z4", "Z9", "G4"] {
            let base = Ring::by_name(name).unwrap();
            let ext = ExtensionRing::new(base).unwrap();
            // every element decomposes uniquely over (1, θ, θ²)
            let mut x = ext.one();
            for _ in 0..50 {
                x = ext.mul(&x, &ext.theta);
                x = ext.add(&x, &ext.one());
                let c = ext.coords(&x);
                assert_eq!(ext.from_coords(c), x);
            }
        }
    }

    #[test]
    fn truncated_rings_rejected() {
        let s3 = Ring::by_name("S3").unwrap();
        assert!(matches!(ExtensionRing::new(s3), Err(RingError::NotGalois)));
    }
}

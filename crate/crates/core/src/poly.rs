//! Univariate polynomials over GF(p): characteristic polynomials and
//! factorization into distinct irreducible factors.

use rand::Rng;

use crate::gfp::{Field, Matrix};

/// Coefficients from the constant term upwards, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<u32>) -> Self {
        for c in &mut coeffs {
            *c = field.reduce(*c);
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: Field) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Poly::new(field, vec![1])
    }

    pub fn x(field: Field) -> Self {
        Poly::new(field, vec![0, 1])
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> u32 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead());
        Poly::new(
            self.field,
            self.coeffs
                .iter()
                .map(|&c| self.field.mul(c, inv))
                .collect(),
        )
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                f.add(
                    *self.coeffs.get(i).unwrap_or(&0),
                    *other.coeffs.get(i).unwrap_or(&0),
                )
            })
            .collect();
        Poly::new(f, c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(self.field.p() - 1))
    }

    pub fn scale(&self, c: u32) -> Poly {
        Poly::new(
            self.field,
            self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let f = self.field;
        let mut c = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a != 0 {
                f.axpy(&mut c[i..i + other.coeffs.len()], a, &other.coeffs);
            }
        }
        Poly::new(f, c)
    }

    /// Quotient and remainder; `d` must be nonzero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let f = self.field;
        let mut r = self.coeffs.clone();
        let dd = d.deg();
        if r.len() <= dd {
            return (Poly::zero(f), self.clone());
        }
        let inv = f.inv(d.lead());
        let mut q = vec![0; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = f.mul(r[i + dd], inv);
            q[i] = c;
            if c != 0 {
                f.axpy(&mut r[i..=i + dd], f.neg(c), &d.coeffs);
            }
        }
        r.truncate(dd);
        (Poly::new(f, q), Poly::new(f, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero());
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| f.mul(a, f.reduce(i as u32)))
            .collect();
        Poly::new(f, c)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Evaluates at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, a: &Matrix) -> Matrix {
        let f = self.field;
        let n = a.rows();
        let mut acc = Matrix::zeros(f, n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(a);
            for i in 0..n {
                let v = f.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }

    /// For `self = g(x^p)`, returns `g`, which is the p-th root over GF(p).
    fn pth_root(&self) -> Poly {
        let p = self.field.p() as usize;
        Poly::new(self.field, self.coeffs.iter().step_by(p).copied().collect())
    }

    /// Product of the distinct monic irreducible factors.
    pub fn radical(&self) -> Poly {
        let f = self.field;
        if self.deg() == 0 {
            return Poly::one(f);
        }
        let d = self.derivative();
        if d.is_zero() {
            return self.pth_root().radical();
        }
        let g = self.gcd(&d);
        let w = self.div_exact(&g).monic();
        let mut h = g;
        loop {
            let c = h.gcd(&w);
            if c.deg() == 0 {
                break;
            }
            h = h.div_exact(&c);
        }
        w.mul(&h.radical()).monic()
    }

    /// Splits a monic square-free polynomial by degree of its factors.
    fn distinct_degree(&self) -> Vec<(usize, Poly)> {
        let f = self.field;
        let x = Poly::x(f);
        let mut rest = self.monic();
        let mut h = x.rem(&rest);
        let mut out = Vec::new();
        let mut i = 1;
        while rest.deg() >= 2 * i {
            h = h.pow_mod(f.p() as u64, &rest);
            let g = rest.gcd(&h.sub(&x));
            if g.deg() > 0 {
                rest = rest.div_exact(&g);
                h = h.rem(&rest);
                out.push((i, g));
            }
            i += 1;
        }
        if rest.deg() > 0 {
            out.push((rest.deg(), rest));
        }
        out
    }

    /// Splits a product of distinct irreducibles all of degree `d`.
    fn equal_degree<R: Rng>(&self, d: usize, rng: &mut R) -> Vec<Poly> {
        let f = self.field;
        let n = self.deg();
        if n == d {
            return vec![self.monic()];
        }
        let p = f.p() as u64;
        loop {
            let a = Poly::new(f, (0..n).map(|_| rng.gen_range(0..f.p())).collect());
            if a.deg() == 0 {
                continue;
            }
            let b = if p == 2 {
                let mut t = a.clone();
                let mut s = a.clone();
                for _ in 1..d {
                    t = t.mul(&t).rem(self);
                    s = s.add(&t);
                }
                s
            } else {
                // a^((p^d - 1)/2) as (a * a^p * ... * a^(p^(d-1)))^((p-1)/2)
                let mut t = a.clone();
                let mut norm = a.clone();
                for _ in 1..d {
                    t = t.pow_mod(p, self);
                    norm = norm.mul(&t).rem(self);
                }
                norm.pow_mod((p - 1) / 2, self).sub(&Poly::one(f))
            };
            let g = self.gcd(&b);
            if g.deg() > 0 && g.deg() < n {
                let mut out = g.equal_degree(d, rng);
                out.extend(self.div_exact(&g).equal_degree(d, rng));
                return out;
            }
        }
    }

    /// Distinct monic irreducible factors, sorted by degree then coefficients.
    pub fn irreducible_factors<R: Rng>(&self, rng: &mut R) -> Vec<Poly> {
        let mut out = Vec::new();
        for (d, g) in self.radical().distinct_degree() {
            out.extend(g.equal_degree(d, rng));
        }
        out.sort_by(|a, b| (a.deg(), &a.coeffs).cmp(&(b.deg(), &b.coeffs)));
        out
    }
}

/// Characteristic polynomial `det(xI - A)` via reduction to Hessenberg form.
pub fn charpoly(a: &Matrix) -> Poly {
    assert!(a.is_square());
    let f = a.field();
    let n = a.rows();
    let mut h = a.clone();
    for j in 0..n.saturating_sub(2) {
        let Some(i) = (j + 1..n).find(|&i| h.get(i, j) != 0) else {
            continue;
        };
        if i != j + 1 {
            for c in 0..n {
                let (x, y) = (h.get(i, c), h.get(j + 1, c));
                h.set(i, c, y);
                h.set(j + 1, c, x);
            }
            for r in 0..n {
                let (x, y) = (h.get(r, i), h.get(r, j + 1));
                h.set(r, i, y);
                h.set(r, j + 1, x);
            }
        }
        let inv = f.inv(h.get(j + 1, j));
        for k in j + 2..n {
            let u = f.mul(h.get(k, j), inv);
            if u == 0 {
                continue;
            }
            for c in 0..n {
                let v = f.sub(h.get(k, c), f.mul(u, h.get(j + 1, c)));
                h.set(k, c, v);
            }
            for r in 0..n {
                let v = f.add(h.get(r, j + 1), f.mul(u, h.get(r, k)));
                h.set(r, j + 1, v);
            }
        }
    }
    // p_m = (x - h_mm) p_{m-1} - sum_{i<m} h_im (prod_{j=i+1..m} h_{j,j-1}) p_{i-1}
    let mut ps: Vec<Poly> = vec![Poly::one(f)];
    for m in 0..n {
        let shifted = Poly::x(f).mul(&ps[m]);
        let mut next = shifted.sub(&ps[m].scale(h.get(m, m)));
        let mut prod = 1;
        for i in (0..m).rev() {
            prod = f.mul(prod, h.get(i + 1, i));
            if prod == 0 {
                break;
            }
            let c = f.mul(h.get(i, m), prod);
            if c != 0 {
                next = next.sub(&ps[i].scale(c));
            }
        }
        ps.push(next);
    }
    ps.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn poly(p: u32, c: &[u32]) -> Poly {
        Poly::new(Field::new(p).unwrap(), c.to_vec())
    }

    #[test]
    fn factors_of_x_pow_p2_minus_x() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for p in [2u32, 3, 5] {
            let f = Field::new(p).unwrap();
            let n = (p * p) as usize;
            let mut c = vec![0; n + 1];
            c[n] = 1;
            c[1] = p - 1;
            let factors = Poly::new(f, c).irreducible_factors(&mut rng);
            let linear = factors.iter().filter(|g| g.degree() == Some(1)).count();
            let quad = factors.iter().filter(|g| g.degree() == Some(2)).count();
            assert_eq!(linear, p as usize);
            assert_eq!(quad, (p * p - p) as usize / 2);
        }
    }

    #[test]
    fn radical_strips_pth_powers() {
        // (x+1)^3 (x+2) over GF(3)
        let a = poly(3, &[1, 1]);
        let b = poly(3, &[2, 1]);
        let f = a.mul(&a).mul(&a).mul(&b);
        assert_eq!(f.radical(), a.mul(&b));
    }

    #[test]
    fn charpoly_of_companion() {
        let f = Field::new(5).unwrap();
        // companion matrix of x^3 + 2x + 3
        let m = Matrix::from_rows(f, &[vec![0, 1, 0], vec![0, 0, 1], vec![-3, -2, 0]]).unwrap();
        assert_eq!(charpoly(&m), poly(5, &[3, 2, 0, 1]));
        assert!(charpoly(&m).eval_matrix(&m).is_zero());
    }
}

//! Multi-modular gcrd.  The primitive remainder sequence is run over F_p[k]
//! for word-size primes, the images are combined by CRT and rational
//! reconstruction, and a candidate is only accepted after exact pseudo-division
//! of both inputs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{Poly, Rat};

/// Dense polynomial over F_p, lowest degree first, no trailing zeros.
type Fq = Vec<u64>;

#[derive(Clone, Copy)]
struct Field(u64);

impl Field {
    fn add(self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        (s % self.0 as u128) as u64
    }

    fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.0 - (b - a)
        }
    }

    fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(self, a: u64) -> u64 {
        self.pow(a, self.0 - 2)
    }

    fn residue(self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.0)).to_u64().unwrap()
    }

    fn trim(p: &mut Fq) {
        while p.last() == Some(&0) {
            p.pop();
        }
    }

    fn pmul(self, a: &Fq, b: &Fq) -> Fq {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = self.add(r[i + j], self.mul(x, y));
            }
        }
        Field::trim(&mut r);
        r
    }

    fn psub(self, a: &Fq, b: &Fq) -> Fq {
        let mut r = a.clone();
        if r.len() < b.len() {
            r.resize(b.len(), 0);
        }
        for (i, &y) in b.iter().enumerate() {
            r[i] = self.sub(r[i], y);
        }
        Field::trim(&mut r);
        r
    }

    fn pscale(self, a: &Fq, s: u64) -> Fq {
        let mut r: Fq = a.iter().map(|&x| self.mul(x, s)).collect();
        Field::trim(&mut r);
        r
    }

    /// `f(k + d)` by Horner.
    fn pshift(self, f: &Fq, d: u64) -> Fq {
        let mut r: Fq = Vec::new();
        for &c in f.iter().rev() {
            // r = r * (k + d) + c
            let mut n = vec![0u64; r.len() + 1];
            for (i, &x) in r.iter().enumerate() {
                n[i + 1] = self.add(n[i + 1], x);
                n[i] = self.add(n[i], self.mul(x, d));
            }
            n[0] = self.add(n[0], c);
            Field::trim(&mut n);
            r = n;
        }
        r
    }

    fn pdivrem(self, a: &Fq, b: &Fq) -> (Fq, Fq) {
        let db = b.len() - 1;
        let li = self.inv(b[db]);
        let mut r = a.clone();
        let mut q = vec![0u64; a.len().saturating_sub(db)];
        while r.len() > db {
            let d = r.len() - 1 - db;
            let t = self.mul(*r.last().unwrap(), li);
            q[d] = t;
            for (i, &y) in b.iter().enumerate() {
                r[i + d] = self.sub(r[i + d], self.mul(t, y));
            }
            Field::trim(&mut r);
        }
        Field::trim(&mut q);
        (q, r)
    }

    fn monic(self, a: &Fq) -> Fq {
        self.pscale(a, self.inv(*a.last().unwrap()))
    }

    fn pgcd(self, a: &Fq, b: &Fq) -> Fq {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let (_, r) = self.pdivrem(&a, &b);
            a = b;
            b = r;
        }
        if a.is_empty() {
            a
        } else {
            self.monic(&a)
        }
    }

    fn reduce(self, p: &Poly) -> Fq {
        let mut r: Fq = p.coeffs().iter().map(|c| self.residue(c.numer())).collect();
        Field::trim(&mut r);
        r
    }

    fn pseudo_rem(self, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
        let db = b.len() - 1;
        let mut r = a.to_vec();
        while r.len() > db {
            let d = r.len() - 1 - db;
            let la = r.last().unwrap().clone();
            let lb = self.pshift(&b[db], d as u64);
            for c in r.iter_mut() {
                *c = self.pmul(c, &lb);
            }
            for (i, bi) in b.iter().enumerate() {
                r[i + d] = self.psub(&r[i + d], &self.pmul(&la, &self.pshift(bi, d as u64)));
            }
            while r.last().is_some_and(|c| c.is_empty()) {
                r.pop();
            }
        }
        r
    }

    /// Strips polynomial content and leading zero terms; the leading
    /// coefficient of the leading polynomial becomes 1.
    fn primitive(self, mut r: Vec<Fq>) -> Vec<Fq> {
        let lead = r.iter().take_while(|c| c.is_empty()).count();
        r.drain(..lead);
        if r.is_empty() {
            return r;
        }
        let mut g: Fq = Vec::new();
        for c in &r {
            g = self.pgcd(&g, c);
            if g.len() == 1 {
                break;
            }
        }
        if g.len() > 1 {
            r = r.iter().map(|c| self.pdivrem(c, &g).0).collect();
        }
        let s = self.inv(*r.last().unwrap().last().unwrap());
        r.iter().map(|c| self.pscale(c, s)).collect()
    }

    fn gcrd(self, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
        let (mut a, mut b) = (self.primitive(a.to_vec()), self.primitive(b.to_vec()));
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = self.pseudo_rem(&a, &b);
            a = b;
            b = self.primitive(r);
        }
        a
    }
}

fn primes() -> impl Iterator<Item = u64> {
    (0..).map(|i| (1u64 << 62) - 1 - 2 * i).filter(|&n| primal_check::miller_rabin(n))
}

/// Residues of one candidate accumulated over the primes seen so far.
struct Lift {
    shape: Vec<usize>,
    modulus: BigInt,
    res: Vec<Vec<BigInt>>,
}

impl Lift {
    fn new(img: &[Fq], p: u64) -> Lift {
        Lift {
            shape: shape(img),
            modulus: BigInt::from(p),
            res: img.iter().map(|c| c.iter().map(|&v| BigInt::from(v)).collect()).collect(),
        }
    }

    fn absorb(&mut self, img: &[Fq], p: u64) {
        let f = Field(p);
        let m_inv = f.inv(f.residue(&self.modulus));
        for (rc, ic) in self.res.iter_mut().zip(img) {
            for (r, &v) in rc.iter_mut().zip(ic) {
                // r + M * ((v - r) / M mod p)
                let t = f.mul(f.sub(v, f.residue(r)), m_inv);
                *r += &self.modulus * BigInt::from(t);
            }
        }
        self.modulus *= p;
    }

    fn reconstruct(&self) -> Option<Vec<Poly>> {
        self.res
            .iter()
            .map(|c| {
                let cs = c.iter().map(|v| rational_reconstruct(v, &self.modulus)).collect::<Option<Vec<Rat>>>()?;
                Some(Poly::new(cs))
            })
            .collect()
    }
}

fn shape(img: &[Fq]) -> Vec<usize> {
    img.iter().map(|c| c.len()).collect()
}

/// `r/s` with `r = s u mod m` and `|r|, s <= sqrt(m/2)`.
fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<Rat> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(Rat::new(r1, s1))
}

/// Modular gcrd of two integer operators (co-order 0).  `verify` must
/// confirm that a candidate right-divides both inputs.  Returns `None` when
/// no candidate is confirmed within the prime budget.
pub(super) fn gcrd2_modular(a: &[Poly], b: &[Poly], verify: impl Fn(&[Poly]) -> bool) -> Option<Vec<Poly>> {
    const MAX_PRIMES: usize = 200;
    let mut lift: Option<Lift> = None;
    let mut last: Option<Vec<Poly>> = None;
    for p in primes().take(MAX_PRIMES) {
        let f = Field(p);
        let (am, bm): (Vec<Fq>, Vec<Fq>) =
            (a.iter().map(|c| f.reduce(c)).collect(), b.iter().map(|c| f.reduce(c)).collect());
        // The leading polynomials must keep their degree mod p.
        let keeps =
            |x: &[Poly], y: &[Fq]| y.last().map(|c| c.len()) == x.last().and_then(|c| c.degree()).map(|d| d + 1);
        if !keeps(a, &am) || !keeps(b, &bm) {
            continue;
        }
        let img = f.gcrd(&am, &bm);
        match &mut lift {
            Some(l) if l.shape == shape(&img) => l.absorb(&img, p),
            // A smaller image means the earlier primes were unlucky.
            Some(l) if better(&shape(&img), &l.shape) => {
                lift = Some(Lift::new(&img, p));
                last = None;
                continue;
            }
            Some(_) => continue,
            None => {
                lift = Some(Lift::new(&img, p));
                continue;
            }
        }
        let cand = lift.as_ref().unwrap().reconstruct();
        if let Some(c) = &cand {
            if last.as_ref() == Some(c) && verify(c) {
                return cand;
            }
        }
        last = cand;
    }
    None
}

fn better(a: &[usize], b: &[usize]) -> bool {
    (a.len(), a.iter().sum::<usize>()) < (b.len(), b.iter().sum::<usize>())
}

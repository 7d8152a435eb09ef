//! Whitney rank generating functions and Tutte polynomials.
//!
//! `R(M; x, y) = Σ_A x^{r(M)-r(A)} y^{ν(A)} = t(M; x+1, y+1)`. For a free
//! product the coefficients of `R(M □ N)` are a convolution of those of
//! `R(M)` and `R(N)`: a pair `(i, j)`, `(k, l)` lands in cell
//! `(i + k - min(i, l), j + l - min(i, l))`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matroid::{rank_table, Matroid, DEFAULT_ENUM_CAP};

/// Dense coefficients `a_{ij}`, `i` the corank in `0..=rank`, `j` the
/// nullity in `0..=nullity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankGenMatrix {
    rank: usize,
    nullity: usize,
    coeffs: Vec<BigInt>,
}

impl RankGenMatrix {
    pub fn zero(rank: usize, nullity: usize) -> Self {
        RankGenMatrix {
            rank,
            nullity,
            coeffs: vec![BigInt::zero(); (rank + 1) * (nullity + 1)],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nullity(&self) -> usize {
        self.nullity
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.coeffs[i * (self.nullity + 1) + j]
    }

    fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.coeffs[i * (self.nullity + 1) + j]
    }

    /// Sum of all coefficients, `2^|E|` for a matroid's matrix.
    pub fn total(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Swaps corank and nullity; the matrix of the dual matroid.
    pub fn transpose(&self) -> Self {
        let mut t = RankGenMatrix::zero(self.nullity, self.rank);
        for i in 0..=self.rank {
            for j in 0..=self.nullity {
                *t.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        t
    }

    /// Nonzero `(i, j, a_ij)`, sorted.
    pub fn terms(&self) -> Vec<(usize, usize, BigInt)> {
        let mut out = Vec::new();
        for i in 0..=self.rank {
            for j in 0..=self.nullity {
                let c = self.get(i, j);
                if !c.is_zero() {
                    out.push((i, j, c.clone()));
                }
            }
        }
        out
    }
}

/// Counts subsets by corank and nullity using the rank oracle.
pub fn rank_gen_brute(m: &Matroid) -> Result<RankGenMatrix> {
    rank_gen_brute_with_cap(m, DEFAULT_ENUM_CAP)
}

pub fn rank_gen_brute_with_cap(m: &Matroid, cap: usize) -> Result<RankGenMatrix> {
    let table = rank_table(m.size(), |a| m.rank_of(a), cap)?;
    let (rank, nullity) = (m.rank(), m.nullity());
    let mut counts = vec![0u64; (rank + 1) * (nullity + 1)];
    for (bits, &r) in table.iter().enumerate() {
        let r = r as usize;
        let size = (bits as u64).count_ones() as usize;
        counts[(rank - r) * (nullity + 1) + (size - r)] += 1;
    }
    Ok(RankGenMatrix {
        rank,
        nullity,
        coeffs: counts.into_iter().map(BigInt::from).collect(),
    })
}

/// Coefficients of `R(M □ N)` from those of `R(M)` and `R(N)`; `rank_m`
/// must equal `r(M)`.
pub fn rank_gen_convolution(
    rm: &RankGenMatrix,
    rank_m: usize,
    rn: &RankGenMatrix,
) -> Result<RankGenMatrix> {
    rank_gen_convolution_counted(rm, rank_m, rn).map(|(r, _)| r)
}

/// As [`rank_gen_convolution`], also returning the number of coefficient
/// products formed. That count is at most
/// `(r(M)+1)(ν(M)+1)(r(N)+1)(ν(N)+1)`.
pub fn rank_gen_convolution_counted(
    rm: &RankGenMatrix,
    rank_m: usize,
    rn: &RankGenMatrix,
) -> Result<(RankGenMatrix, u64)> {
    if rank_m != rm.rank {
        return Err(Error::DimensionMismatch(format!(
            "r(M) = {rank_m} but the matrix has corank range 0..={}",
            rm.rank
        )));
    }
    let mut out = RankGenMatrix::zero(rm.rank + rn.rank, rm.nullity + rn.nullity);
    let mut ops = 0u64;
    for i in 0..=rm.rank {
        for j in 0..=rm.nullity {
            let a = rm.get(i, j);
            if a.is_zero() {
                continue;
            }
            for k in 0..=rn.rank {
                for l in 0..=rn.nullity {
                    let b = rn.get(k, l);
                    if b.is_zero() {
                        continue;
                    }
                    let shared = i.min(l);
                    *out.get_mut(i + k - shared, j + l - shared) += a * b;
                    ops += 1;
                }
            }
        }
    }
    Ok((out, ops))
}

/// A bivariate integer polynomial stored densely by `(x degree, y degree)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuttePolynomial {
    x_deg: usize,
    y_deg: usize,
    coeffs: Vec<BigInt>,
}

impl TuttePolynomial {
    pub fn zero(x_deg: usize, y_deg: usize) -> Self {
        TuttePolynomial {
            x_deg,
            y_deg,
            coeffs: vec![BigInt::zero(); (x_deg + 1) * (y_deg + 1)],
        }
    }

    /// Builds a polynomial from `(p, q, c)` terms.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (usize, usize, C)>) -> Self {
        let terms: Vec<(usize, usize, BigInt)> = terms
            .into_iter()
            .map(|(p, q, c)| (p, q, c.into()))
            .collect();
        let xd = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let yd = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let mut out = TuttePolynomial::zero(xd, yd);
        for (p, q, c) in terms {
            *out.get_mut(p, q) += c;
        }
        out.trimmed()
    }

    pub fn coeff(&self, p: usize, q: usize) -> BigInt {
        if p <= self.x_deg && q <= self.y_deg {
            self.coeffs[p * (self.y_deg + 1) + q].clone()
        } else {
            BigInt::zero()
        }
    }

    fn get_mut(&mut self, p: usize, q: usize) -> &mut BigInt {
        &mut self.coeffs[p * (self.y_deg + 1) + q]
    }

    /// Nonzero terms `(x exponent, y exponent, coefficient)` sorted by
    /// exponents.
    pub fn terms(&self) -> Vec<(usize, usize, BigInt)> {
        let mut out = Vec::new();
        for p in 0..=self.x_deg {
            for q in 0..=self.y_deg {
                let c = self.coeff(p, q);
                if !c.is_zero() {
                    out.push((p, q, c));
                }
            }
        }
        out
    }

    /// `t(y, x)`.
    pub fn swap_xy(&self) -> Self {
        TuttePolynomial::from_terms(self.terms().into_iter().map(|(p, q, c)| (q, p, c)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = TuttePolynomial::zero(self.x_deg + other.x_deg, self.y_deg + other.y_deg);
        for (p, q, c) in self.terms() {
            for (s, t, d) in other.terms() {
                *out.get_mut(p + s, q + t) += &c * &d;
            }
        }
        out.trimmed()
    }

    fn trimmed(self) -> Self {
        let terms = self.terms();
        let xd = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let yd = terms.iter().map(|t| t.1).max().unwrap_or(0);
        if xd == self.x_deg && yd == self.y_deg {
            return self;
        }
        let mut out = TuttePolynomial::zero(xd, yd);
        for (p, q, c) in terms {
            *out.get_mut(p, q) = c;
        }
        out
    }

    /// Evaluates at integer points.
    pub fn eval(&self, x: i64, y: i64) -> BigInt {
        self.terms()
            .into_iter()
            .map(|(p, q, c)| c * BigInt::from(x).pow(p as u32) * BigInt::from(y).pow(q as u32))
            .sum()
    }
}

fn binomials(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![BigInt::one(); i + 1];
        for k in 1..i {
            row[k] = &rows[i - 1][k - 1] + &rows[i - 1][k];
        }
        rows.push(row);
    }
    rows
}

/// `t(x, y) = R(x - 1, y - 1)`, expanded binomially.
pub fn tutte_from_rank_gen(r: &RankGenMatrix) -> TuttePolynomial {
    let binom = binomials(r.rank.max(r.nullity));
    let sign = |e: usize| {
        if e.is_multiple_of(2) {
            BigInt::one()
        } else {
            -BigInt::one()
        }
    };
    let mut out = TuttePolynomial::zero(r.rank, r.nullity);
    for i in 0..=r.rank {
        for j in 0..=r.nullity {
            let a = r.get(i, j);
            if a.is_zero() {
                continue;
            }
            for p in 0..=i {
                let xi = a * &binom[i][p] * sign(i - p);
                for q in 0..=j {
                    *out.get_mut(p, q) += &xi * &binom[j][q] * sign(j - q);
                }
            }
        }
    }
    out.trimmed()
}

pub fn tutte_polynomial(m: &Matroid) -> Result<TuttePolynomial> {
    Ok(tutte_from_rank_gen(&rank_gen_brute(m)?))
}

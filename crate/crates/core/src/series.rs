//! Truncated power series with exact rational coefficients.
//!
//! A [`RationalSeries`] is tagged as an exponential (labeled) or ordinary
//! (unlabeled) generating function. Arithmetic is the same for both; the tag
//! only stops the two from being mixed. Products of exponential series whose
//! `n!`-scaled coefficients are integers are computed as binomial
//! convolutions over big integers, which keeps the labeled chain fast at
//! orders in the hundreds.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::counting::bicolored_labeled;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `sum f_n x^n / n!`, counting labeled structures.
    Egf,
    /// `sum f_n x^n`, counting unlabeled structures.
    Ogf,
}

impl Convention {
    fn name(self) -> &'static str {
        match self {
            Convention::Egf => "EGF",
            Convention::Ogf => "OGF",
        }
    }
}

/// Coefficients `c_0..=c_N` of a power series, always in lowest terms.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalSeries {
    coeffs: Vec<BigRational>,
    convention: Convention,
}

fn factorials(n: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigInt::one());
    for i in 1..=n {
        let next = &out[i - 1] * BigInt::from(i);
        out.push(next);
    }
    out
}

/// Rows `0..=n` of Pascal's triangle.
fn binomial_rows(n: usize) -> Vec<Vec<BigInt>> {
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

impl RationalSeries {
    pub fn from_coeffs(convention: Convention, coeffs: Vec<BigRational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series keeps at least the constant term"
        );
        RationalSeries { coeffs, convention }
    }

    pub fn zero(convention: Convention, order: usize) -> Self {
        Self::from_coeffs(convention, vec![BigRational::zero(); order + 1])
    }

    pub fn one(convention: Convention, order: usize) -> Self {
        let mut s = Self::zero(convention, order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// Generating function of a counting sequence: `f_n / n!` per term for
    /// EGFs, `f_n` for OGFs.
    pub fn from_counts<T: Into<BigInt> + Clone>(convention: Convention, counts: &[T]) -> Self {
        let facts = factorials(counts.len().saturating_sub(1));
        let coeffs = counts
            .iter()
            .enumerate()
            .map(|(n, c)| match convention {
                Convention::Egf => BigRational::new(c.clone().into(), facts[n].clone()),
                Convention::Ogf => BigRational::from_integer(c.clone().into()),
            })
            .collect();
        Self::from_coeffs(convention, coeffs)
    }

    /// Inverse of [`from_counts`](Self::from_counts); fails with
    /// `NonIntegralResult` at the first coefficient that is not a count.
    pub fn counts(&self) -> Result<Vec<BigInt>> {
        let facts = factorials(self.order());
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                let scaled = match self.convention {
                    Convention::Egf => c * BigRational::from_integer(facts[n].clone()),
                    Convention::Ogf => c.clone(),
                };
                if scaled.is_integer() {
                    Ok(scaled.to_integer())
                } else {
                    Err(Error::NonIntegralResult(n))
                }
            })
            .collect()
    }

    /// Like [`counts`](Self::counts) but also rejects negative values.
    pub fn natural_counts(&self) -> Result<Vec<BigUint>> {
        self.counts()?
            .into_iter()
            .enumerate()
            .map(|(n, c)| c.to_biguint().ok_or(Error::NonIntegralResult(n)))
            .collect()
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(
            self.convention,
            self.coeffs[..=order.min(self.order())].to_vec(),
        )
    }

    fn check_pair(&self, other: &Self) -> Result<usize> {
        if self.convention != other.convention {
            return Err(Error::ConventionMismatch(
                self.convention.name(),
                other.convention.name(),
            ));
        }
        Ok(self.order().min(other.order()))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let n = self.check_pair(other)?;
        let coeffs = (0..=n)
            .map(|i| &self.coeffs[i] + &other.coeffs[i])
            .collect();
        Ok(Self::from_coeffs(self.convention, coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let n = self.check_pair(other)?;
        let coeffs = (0..=n)
            .map(|i| &self.coeffs[i] - &other.coeffs[i])
            .collect();
        Ok(Self::from_coeffs(self.convention, coeffs))
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c * factor).collect();
        Self::from_coeffs(self.convention, coeffs)
    }

    /// Multiplication by `x`, keeping the order.
    pub fn shift(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(BigRational::zero());
        coeffs.extend_from_slice(&self.coeffs[..self.order()]);
        Self::from_coeffs(self.convention, coeffs)
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let n = self.check_pair(other)?;
        if self.convention == Convention::Egf {
            if let (Some(a), Some(b)) = (self.scaled_integers(n), other.scaled_integers(n)) {
                let rows = binomial_rows(n);
                let c = (0..=n)
                    .map(|m| {
                        (0..=m)
                            .map(|k| &rows[m][k] * &a[k] * &b[m - k])
                            .sum::<BigInt>()
                    })
                    .collect::<Vec<_>>();
                return Ok(Self::from_counts(Convention::Egf, &c));
            }
        }
        Ok(self.mul_generic(other, n))
    }

    /// Plain rational Cauchy product.
    pub fn mul_generic(&self, other: &Self, n: usize) -> Self {
        let coeffs = (0..=n)
            .map(|m| {
                (0..=m)
                    .map(|k| &self.coeffs[k] * &other.coeffs[m - k])
                    .fold(BigRational::zero(), |acc, x| acc + x)
            })
            .collect();
        Self::from_coeffs(self.convention, coeffs)
    }

    /// `n!`-scaled coefficients up to `order`, when all are integers.
    fn scaled_integers(&self, order: usize) -> Option<Vec<BigInt>> {
        let mut fact = BigInt::one();
        let mut out = Vec::with_capacity(order + 1);
        for (i, c) in self.coeffs[..=order].iter().enumerate() {
            if i > 0 {
                fact *= BigInt::from(i);
            }
            let (q, r) = (c.numer() * &fact).div_rem(c.denom());
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(out)
    }

    /// `self / other`; `other` needs a nonzero constant term.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let n = self.check_pair(other)?;
        if other.coeffs[0].is_zero() {
            return Err(Error::NotAUnit);
        }
        let b0 = &other.coeffs[0];
        if self.convention == Convention::Egf && b0.abs().is_one() {
            if let (Some(a), Some(b)) = (self.scaled_integers(n), other.scaled_integers(n)) {
                let rows = binomial_rows(n);
                let unit = b0.to_integer();
                let mut c: Vec<BigInt> = Vec::with_capacity(n + 1);
                for m in 0..=n {
                    let mut acc = a[m].clone();
                    for k in 1..=m {
                        acc -= &rows[m][k] * &b[k] * &c[m - k];
                    }
                    c.push(acc * &unit);
                }
                return Ok(Self::from_counts(Convention::Egf, &c));
            }
        }
        let mut c: Vec<BigRational> = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let mut acc = self.coeffs[m].clone();
            for k in 1..=m {
                acc -= &other.coeffs[k] * &c[m - k];
            }
            c.push(acc / b0);
        }
        Ok(Self::from_coeffs(self.convention, c))
    }

    /// Coefficients as `"num/den"` strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|c| serde_json::Value::String(format!("{}/{}", c.numer(), c.denom())))
                .collect(),
        )
    }
}

impl fmt::Debug for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.convention.name())?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesName {
    /// Sets: `e^x` as an EGF, `1/(1-x)` as an OGF.
    E,
    /// Singletons: `x`.
    X,
    /// Nonempty sets, `E - 1`.
    Egeq1,
    /// Sets of size at least two, `E - 1 - X`.
    Egeq2,
    /// Linear orders: `1/(1-x)` in both conventions.
    OneOverOneMinusX,
    /// `(2 - x - 2e^{-x})/(1 - x)` from its closed-form coefficients.
    Afactor,
    /// `((2 - X)E - 2)/((1 - X)E)` built by series arithmetic in EGF form.
    UFactorLabeled,
    /// The same expression in OGF form, which reduces to `x/(1-x)`.
    UFactorUnlabeled,
}

/// The named series up to `order`. The species series (`E`, `X`, `Egeq1`,
/// `Egeq2`, `OneOverOneMinusX`) are produced in the requested convention;
/// `Afactor` and `UFactorLabeled` are always EGF-level objects and
/// `UFactorUnlabeled` always OGF-level, whatever `convention` says.
pub fn series(name: SeriesName, convention: Convention, order: usize) -> RationalSeries {
    use SeriesName::*;
    let ones = || vec![BigInt::one(); order + 1];
    match name {
        E => match convention {
            Convention::Egf => RationalSeries::from_counts(Convention::Egf, &ones()),
            Convention::Ogf => RationalSeries::from_counts(Convention::Ogf, &ones()),
        },
        X => {
            let mut s = RationalSeries::zero(convention, order);
            if order >= 1 {
                s.coeffs[1] = BigRational::one();
            }
            s
        }
        Egeq1 => series(E, convention, order)
            .sub(&RationalSeries::one(convention, order))
            .expect("same convention"),
        Egeq2 => series(Egeq1, convention, order)
            .sub(&series(X, convention, order))
            .expect("same convention"),
        OneOverOneMinusX => {
            let coeffs = vec![BigRational::one(); order + 1];
            RationalSeries::from_coeffs(convention, coeffs)
        }
        Afactor => afactor(order),
        UFactorLabeled => u_factor(Convention::Egf, order),
        UFactorUnlabeled => u_factor(Convention::Ogf, order),
    }
}

/// Ordinary coefficients of `(2 - x - 2e^{-x})/(1 - x)`: partial sums of the
/// expansion `2 - x - 2e^{-x} = x - 2 sum_{i>=2} (-1)^i x^i / i!`.
fn afactor(order: usize) -> RationalSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut partial = BigRational::zero();
    let mut inv_fact = BigRational::one();
    for i in 0..=order {
        if i > 0 {
            inv_fact /= BigRational::from_integer(BigInt::from(i));
        }
        let term = match i {
            0 => BigRational::zero(),
            1 => BigRational::one(),
            _ => {
                let sign = if i % 2 == 0 { -2 } else { 2 };
                &inv_fact * BigRational::from_integer(BigInt::from(sign))
            }
        };
        partial += term;
        coeffs.push(partial.clone());
    }
    RationalSeries::from_coeffs(Convention::Egf, coeffs)
}

fn u_factor(convention: Convention, order: usize) -> RationalSeries {
    let one = RationalSeries::one(convention, order);
    let x = series(SeriesName::X, convention, order);
    let e = series(SeriesName::E, convention, order);
    let two = one.scale(&BigRational::from_integer(2.into()));
    let two_minus_x = two.sub(&x).expect("same convention");
    let numer = two_minus_x.mul(&e).and_then(|s| s.sub(&two));
    let denom = one.sub(&x).and_then(|s| s.mul(&e));
    numer
        .and_then(|nu| nu.div(&denom?))
        .expect("(1 - X)E has constant term 1")
}

/// Exponential generating functions of the labeled species, all derived
/// from the closed-form bicolored counts.
#[derive(Clone, Debug)]
pub struct LabeledChain {
    pub bc: RationalSeries,
    pub s: RationalSeries,
    pub u: RationalSeries,
    pub b: RationalSeries,
    pub cs: RationalSeries,
    pub uk: RationalSeries,
    pub uamb: RationalSeries,
}

impl LabeledChain {
    pub fn named(&self) -> [(&'static str, &RationalSeries); 7] {
        [
            ("BC", &self.bc),
            ("S", &self.s),
            ("U", &self.u),
            ("B", &self.b),
            ("cS", &self.cs),
            ("UK", &self.uk),
            ("Uamb", &self.uamb),
        ]
    }
}

/// `BC` from the closed form, then `S = (1-x) BC`, `U = A S`, `B = S - U`,
/// `cS = BC / E`, `UK = E_{>=2} cS` and `Uamb = x B`.
pub fn derive_labeled_chain(order: usize) -> LabeledChain {
    use SeriesName::*;
    let egf = Convention::Egf;
    let counts: Vec<BigInt> = (0..=order)
        .map(|n| BigInt::from(bicolored_labeled(n as u64)))
        .collect();
    let bc = RationalSeries::from_counts(egf, &counts);
    let one_minus_x = RationalSeries::one(egf, order)
        .sub(&series(X, egf, order))
        .expect("same convention");
    let chain = || -> Result<LabeledChain> {
        let s = one_minus_x.mul(&bc)?;
        let u = series(Afactor, egf, order).mul(&s)?;
        let b = s.sub(&u)?;
        let cs = bc.div(&series(E, egf, order))?;
        let uk = series(Egeq2, egf, order).mul(&cs)?;
        let uamb = b.shift();
        Ok(LabeledChain {
            bc: bc.clone(),
            s,
            u,
            b,
            cs,
            uk,
            uamb,
        })
    };
    chain().expect("all series are EGFs and E is a unit")
}

/// Ordinary generating functions of the unlabeled species.
#[derive(Clone, Debug)]
pub struct UnlabeledChain {
    pub s: RationalSeries,
    pub u: RationalSeries,
    pub b: RationalSeries,
    pub bc: RationalSeries,
}

/// `U = x/(1-x) S`, `BC = 1/(1-x) S` and `B = S - U` from the unlabeled
/// split counts `base[0..=order]`.
pub fn derive_unlabeled_chain(order: usize, base: &[BigUint]) -> Result<UnlabeledChain> {
    if order >= base.len() {
        return Err(Error::InsufficientBase {
            requested: order,
            available: base.len(),
        });
    }
    let ogf = Convention::Ogf;
    let counts: Vec<BigInt> = base[..=order]
        .iter()
        .map(|c| BigInt::from(c.clone()))
        .collect();
    let s = RationalSeries::from_counts(ogf, &counts);
    let seq = series(SeriesName::OneOverOneMinusX, ogf, order);
    let bc = seq.mul(&s)?;
    let u = bc.shift();
    let b = s.sub(&u)?;
    Ok(UnlabeledChain { s, u, b, bc })
}

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Coeff, FieldSpec, Monomial, MonomialOrder, PolyError};

/// Sparse multivariate polynomial with exact coefficients.
///
/// Terms are kept in a map keyed by exponent vector and never hold a zero
/// coefficient, so two polynomials are equal exactly when their maps are. The
/// map's own ordering is an implementation detail; anything user-facing sorts
/// by a [`MonomialOrder`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: FieldSpec,
    nvars: usize,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Polynomial {
    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        Polynomial {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: FieldSpec, nvars: usize, c: Coeff) -> Self {
        Self::from_terms(field, nvars, [(Monomial::one(nvars), c)])
    }

    pub fn one(field: FieldSpec, nvars: usize) -> Self {
        Self::constant(field, nvars, Coeff::one())
    }

    pub fn from_i64(field: FieldSpec, nvars: usize, c: i64) -> Self {
        Self::constant(field, nvars, field.from_i64(c))
    }

    /// The variable `x_{var+1}`.
    pub fn var(field: FieldSpec, nvars: usize, var: usize) -> Self {
        Self::from_terms(field, nvars, [(Monomial::var(nvars, var), Coeff::one())])
    }

    pub fn monomial(field: FieldSpec, m: Monomial, c: Coeff) -> Self {
        let nvars = m.nvars();
        Self::from_terms(field, nvars, [(m, c)])
    }

    /// Sums like terms and drops zeros. Coefficients must already be field
    /// elements (see [`FieldSpec::element`]).
    pub fn from_terms(
        field: FieldSpec,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Coeff)>,
    ) -> Self {
        let mut map: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            let slot = map.entry(m).or_insert_with(Coeff::zero);
            *slot = field.add(slot, &c);
        }
        map.retain(|_, c| !c.is_zero());
        Polynomial {
            field,
            nvars,
            terms: map,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(m, c)| m.is_one() && c.is_one())
    }

    /// Constant polynomials, including zero.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Total degree; `None` stands for the degree of the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Indices of variables that occur with a positive exponent.
    pub fn variables(&self) -> Vec<usize> {
        let mut used = vec![false; self.nvars];
        for m in self.terms.keys() {
            for v in m.support() {
                used[v] = true;
            }
        }
        (0..self.nvars).filter(|&v| used[v]).collect()
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.field != other.field {
            return Err(PolyError::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        if self.nvars != other.nvars {
            return Err(PolyError::VarCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.add_scaled_assign(other, &Coeff::one(), None);
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        let minus_one = self.field.from_i64(-1);
        out.add_scaled_assign(other, &minus_one, None);
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_compatible(other)?;
        let mut acc: HashMap<Monomial, Coeff> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = self.field.mul(ca, cb);
                let slot = acc.entry(ma.mul(mb)).or_insert_with(Coeff::zero);
                *slot = self.field.add(slot, &c);
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms,
        })
    }

    pub fn pow(&self, mut exp: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.field, self.nvars);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, v)| (m.clone(), self.field.mul(v, c)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms,
        }
    }

    /// `self += c * shift * other`, where `shift` multiplies every monomial.
    pub(crate) fn add_scaled_assign(
        &mut self,
        other: &Polynomial,
        c: &Coeff,
        shift: Option<&Monomial>,
    ) {
        for (m, v) in &other.terms {
            let m = match shift {
                Some(s) => m.mul(s),
                None => m.clone(),
            };
            let delta = self.field.mul(v, c);
            let sum = match self.terms.get(&m) {
                Some(old) => self.field.add(old, &delta),
                None => delta,
            };
            if sum.is_zero() {
                self.terms.remove(&m);
            } else {
                self.terms.insert(m, sum);
            }
        }
    }

    pub fn evaluate(&self, point: &[Coeff]) -> Result<Coeff, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::PointLength {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let f = self.field;
        let mut total = Coeff::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    term = f.mul(&term, &f.pow(x, e));
                }
            }
            total = f.add(&total, &term);
        }
        Ok(total)
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Result<(&Monomial, &Coeff), PolyError> {
        self.terms
            .iter()
            .max_by(|a, b| order.compare(a.0, b.0))
            .ok_or(PolyError::ZeroPolynomial)
    }

    /// Terms in descending `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &Coeff)> {
        let mut out: Vec<_> = self.terms.iter().collect();
        out.sort_by(|a, b| order.compare(b.0, a.0));
        out
    }

    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson {
            field: self.field,
            vars: self.nvars,
            terms: self
                .sorted_terms(&MonomialOrder::grlex())
                .into_iter()
                .map(|(m, c)| (self.field.format(c), m.exponents().to_vec()))
                .collect(),
        }
    }

    pub fn from_json(json: &PolynomialJson) -> Result<Polynomial, PolyError> {
        let field = FieldSpec::new(json.field.characteristic())?;
        let mut terms = Vec::with_capacity(json.terms.len());
        for (c, e) in &json.terms {
            if e.len() != json.vars {
                return Err(PolyError::Parse(format!(
                    "exponent vector of length {} in a {}-variable polynomial",
                    e.len(),
                    json.vars
                )));
            }
            terms.push((Monomial::new(e.clone()), field.parse(c)?));
        }
        Ok(Polynomial::from_terms(field, json.vars, terms))
    }
}

/// Wire form: `{"field": {"char": p}, "vars": m, "terms": [[coeff, [e_1..e_m]], ...]}`
/// with terms grlex-descending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub field: FieldSpec,
    pub vars: usize,
    pub terms: Vec<(String, Vec<u32>)>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let json = PolynomialJson::deserialize(deserializer)?;
        Polynomial::from_json(&json).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self
            .sorted_terms(&MonomialOrder::grlex())
            .into_iter()
            .enumerate()
        {
            let negative = !self.field.is_prime_field() && c.is_negative();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&self.field.format(&magnitude))?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", self.field.format(&magnitude))?;
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("incompatible polynomials")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("incompatible polynomials")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("incompatible polynomials")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(&self.field.from_i64(-1))
    }
}

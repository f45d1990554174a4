//! Differential-polynomial algebra: field symbols with internal/spatial
//! indices and derivative multi-indices, exact total and variational
//! derivatives, curvature and the identities built from them.
//!
//! Free internal indices never live inside a polynomial; adjoint-valued
//! quantities are arrays of [`DiffPoly`] indexed at the Rust level. The
//! coupling appears only as a formal power of `g^2` in each monomial, so
//! the vanishing-coupling limit is substitution, not re-derivation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::{gint, int, real, GaussRat, Rat};

/// Highest derivative order a symbol may carry.
pub const MAX_DERIV_ORDER: u32 = 4;

/// Base field or parameter kind. Spatial indices run over `1..=3`,
/// spacetime indices over `0..=3` (0 is time).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymKind {
    /// Gauge potential `A_mu`.
    A { mu: u8 },
    /// Conjugate momentum `Pi^i`.
    Pi { i: u8 },
    /// Multiplier two-form components `B_{0i}`.
    B0 { i: u8 },
    /// Spatial two-form components `B_{jk}` with `j < k` canonical.
    B { j: u8, k: u8 },
    /// Adjoint-valued scalar parameter (slot distinguishes independent
    /// parameters in multi-parameter identities).
    Eps { slot: u8 },
    /// Adjoint-valued spatial-vector parameter.
    EpsV { slot: u8, i: u8 },
    /// Diffeomorphism parameter `xi^mu`; carries no internal index.
    Xi { mu: u8 },
}

/// One field symbol: kind, optional internal index, derivative counts per
/// spacetime direction. Count storage keeps the multi-index canonically
/// sorted (derivatives commute).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldSymbol {
    pub kind: SymKind,
    pub internal: Option<u8>,
    pub deriv: [u8; 4],
}

impl FieldSymbol {
    pub fn base(kind: SymKind, internal: Option<u8>) -> Self {
        FieldSymbol {
            kind,
            internal,
            deriv: [0; 4],
        }
    }

    pub fn a(mu: u8, internal: u8) -> Self {
        Self::base(SymKind::A { mu }, Some(internal))
    }

    pub fn pi(i: u8, internal: u8) -> Self {
        Self::base(SymKind::Pi { i }, Some(internal))
    }

    pub fn b0(i: u8, internal: u8) -> Self {
        Self::base(SymKind::B0 { i }, Some(internal))
    }

    pub fn eps(slot: u8, internal: u8) -> Self {
        Self::base(SymKind::Eps { slot }, Some(internal))
    }

    pub fn epsv(slot: u8, i: u8, internal: u8) -> Self {
        Self::base(SymKind::EpsV { slot, i }, Some(internal))
    }

    pub fn xi(mu: u8) -> Self {
        Self::base(SymKind::Xi { mu }, None)
    }

    pub fn order(&self) -> u32 {
        self.deriv.iter().map(|&c| u32::from(c)).sum()
    }

    /// The same symbol with one more derivative in `dir`.
    pub fn derived(&self, dir: u8) -> Result<Self> {
        let mut out = *self;
        out.deriv[dir as usize] += 1;
        if out.order() > MAX_DERIV_ORDER {
            return Err(Error::Order {
                found: out.order(),
                max: MAX_DERIV_ORDER,
            });
        }
        Ok(out)
    }

    /// Strip all derivatives.
    pub fn base_symbol(&self) -> Self {
        FieldSymbol {
            deriv: [0; 4],
            ..*self
        }
    }

    /// Parse the canonical text of an underived symbol (inverse of
    /// `Display` for base symbols), e.g. `A[1,2]`, `eps0[3]`, `xi[0]`.
    pub fn parse_base(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("unparseable field symbol `{s}`"));
        let open = s.find('[').ok_or_else(bad)?;
        let close = s.strip_suffix(']').ok_or_else(bad)?;
        let head = &s[..open];
        let args: Vec<u8> = close[open + 1..]
            .split(',')
            .map(|t| t.trim().parse::<u8>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let sym = match (head, args.as_slice()) {
            ("A", [mu, n]) => Self::a(*mu, *n),
            ("Pi", [i, n]) => Self::pi(*i, *n),
            ("B0", [i, n]) => Self::b0(*i, *n),
            ("B", [j, k, n]) => Self::base(SymKind::B { j: *j, k: *k }, Some(*n)),
            ("xi", [mu]) => Self::xi(*mu),
            (h, rest) => {
                if let Some(slot) = h.strip_prefix("epsv") {
                    let slot = slot.parse::<u8>().map_err(|_| bad())?;
                    match rest {
                        [i, n] => Self::epsv(slot, *i, *n),
                        _ => return Err(bad()),
                    }
                } else if let Some(slot) = h.strip_prefix("eps") {
                    let slot = slot.parse::<u8>().map_err(|_| bad())?;
                    match rest {
                        [n] => Self::eps(slot, *n),
                        _ => return Err(bad()),
                    }
                } else {
                    return Err(bad());
                }
            }
        };
        Ok(sym)
    }
}

impl fmt::Display for FieldSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let core = match (self.kind, self.internal) {
            (SymKind::A { mu }, Some(i)) => format!("A[{mu},{i}]"),
            (SymKind::Pi { i }, Some(n)) => format!("Pi[{i},{n}]"),
            (SymKind::B0 { i }, Some(n)) => format!("B0[{i},{n}]"),
            (SymKind::B { j, k }, Some(n)) => format!("B[{j},{k},{n}]"),
            (SymKind::Eps { slot }, Some(n)) => format!("eps{slot}[{n}]"),
            (SymKind::EpsV { slot, i }, Some(n)) => format!("epsv{slot}[{i},{n}]"),
            (SymKind::Xi { mu }, None) => format!("xi[{mu}]"),
            _ => format!("{self:?}"),
        };
        if self.order() == 0 {
            return write!(f, "{core}");
        }
        let mut d = String::new();
        for (dir, &count) in self.deriv.iter().enumerate() {
            match count {
                0 => {}
                1 => d.push_str(&format!("d{dir}")),
                n => d.push_str(&format!("d{dir}^{n}")),
            }
        }
        write!(f, "{d}({core})")
    }
}

/// Monomial key: formal `g^2` exponent plus a sorted factor multiset.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Mono {
    g2: i32,
    factors: Vec<FieldSymbol>,
}

impl Mono {
    fn unit() -> Self {
        Mono {
            g2: 0,
            factors: Vec::new(),
        }
    }
}

/// Differential polynomial: canonical sum of monomials with
/// Gaussian-rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiffPoly {
    terms: BTreeMap<Mono, GaussRat>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut p = Self::zero();
        p.accumulate(Mono::unit(), c);
        p
    }

    pub fn one() -> Self {
        Self::constant(gint(1))
    }

    pub fn field(sym: FieldSymbol) -> Self {
        let mut p = Self::zero();
        p.accumulate(
            Mono {
                g2: 0,
                factors: vec![sym],
            },
            gint(1),
        );
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn accumulate(&mut self, key: Mono, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.accumulate(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.accumulate(k.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.accumulate(k.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let mut factors = k1.factors.clone();
                factors.extend_from_slice(&k2.factors);
                factors.sort();
                out.accumulate(
                    Mono {
                        g2: k1.g2 + k2.g2,
                        factors,
                    },
                    c1.clone() * c2.clone(),
                );
            }
        }
        out
    }

    /// Multiply by `g^{2k}`.
    pub fn mul_g2(&self, k: i32) -> Self {
        let mut out = Self::zero();
        for (key, c) in &self.terms {
            out.accumulate(
                Mono {
                    g2: key.g2 + k,
                    factors: key.factors.clone(),
                },
                c.clone(),
            );
        }
        out
    }

    /// Substitute a numeric value for the formal coupling `g^2`.
    pub fn subst_g2(&self, value: &Rat) -> Result<Self> {
        let mut out = Self::zero();
        for (key, c) in &self.terms {
            let weight = if key.g2 >= 0 {
                rat_pow(value, key.g2 as u32)
            } else {
                if value.is_zero() {
                    return Err(Error::Config(
                        "negative power of g^2 evaluated at g = 0".into(),
                    ));
                }
                rat_pow(value, (-key.g2) as u32).recip()
            };
            out.accumulate(
                Mono {
                    g2: 0,
                    factors: key.factors.clone(),
                },
                c.clone() * real(weight),
            );
        }
        Ok(out)
    }

    /// Total derivative in direction `dir` (Leibniz rule).
    pub fn total_derivative(&self, dir: u8) -> Result<Self> {
        let mut out = Self::zero();
        for (key, c) in &self.terms {
            for (pos, sym) in key.factors.iter().enumerate() {
                let mut factors = key.factors.clone();
                factors[pos] = sym.derived(dir)?;
                factors.sort();
                out.accumulate(
                    Mono {
                        g2: key.g2,
                        factors,
                    },
                    c.clone(),
                );
            }
        }
        Ok(out)
    }

    /// Formal partial derivative with respect to one exact symbol
    /// (derivative multi-index included), with multiplicity.
    pub fn partial(&self, sym: &FieldSymbol) -> Self {
        let mut out = Self::zero();
        for (key, c) in &self.terms {
            let mult = key.factors.iter().filter(|f| *f == sym).count();
            if mult == 0 {
                continue;
            }
            let mut factors = key.factors.clone();
            let pos = factors.iter().position(|f| f == sym).expect("present");
            factors.remove(pos);
            out.accumulate(
                Mono {
                    g2: key.g2,
                    factors,
                },
                c.clone() * gint(mult as i64),
            );
        }
        out
    }

    /// Euler operator (variational derivative) with respect to the base
    /// field `base` (which must carry no derivatives):
    /// `sum_alpha (-1)^{|alpha|} D^alpha (d self / d phi_alpha)`.
    pub fn variational_derivative(&self, base: &FieldSymbol) -> Result<Self> {
        debug_assert_eq!(base.order(), 0, "variation target must be underived");
        let mut derivs: BTreeSet<[u8; 4]> = BTreeSet::new();
        for key in self.terms.keys() {
            for f in &key.factors {
                if f.kind == base.kind && f.internal == base.internal {
                    derivs.insert(f.deriv);
                }
            }
        }
        let mut acc = Self::zero();
        for alpha in derivs {
            let sym = FieldSymbol {
                deriv: alpha,
                ..*base
            };
            let mut term = self.partial(&sym);
            let mut order = 0u32;
            for (dir, &count) in alpha.iter().enumerate() {
                for _ in 0..count {
                    term = term.total_derivative(dir as u8)?;
                    order += 1;
                }
            }
            if order % 2 == 1 {
                term = term.neg();
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Iterate `(coefficient, g2 exponent, factors)` triples in canonical
    /// order.
    pub fn iter_terms(&self) -> impl Iterator<Item = (&GaussRat, i32, &[FieldSymbol])> + '_ {
        self.terms
            .iter()
            .map(|(k, c)| (c, k.g2, k.factors.as_slice()))
    }

    /// All base fields (derivatives stripped) occurring in the polynomial.
    pub fn base_symbols(&self) -> BTreeSet<FieldSymbol> {
        let mut out = BTreeSet::new();
        for key in self.terms.keys() {
            for f in &key.factors {
                out.insert(f.base_symbol());
            }
        }
        out
    }

    /// Coefficients of the field-free monomials (one per `g^2` power).
    pub fn field_free_part(&self) -> Vec<(i32, GaussRat)> {
        self.terms
            .iter()
            .filter(|(k, _)| k.factors.is_empty())
            .map(|(k, c)| (k.g2, c.clone()))
            .collect()
    }

    /// Whether the polynomial is a total divergence.
    ///
    /// The variational complex is exact on polynomial densities: a density
    /// is a total divergence iff its Euler derivative with respect to
    /// every dependent field vanishes and it has no field-free part.
    /// Smeared over a closed manifold, such a density integrates to zero
    /// for every field configuration.
    pub fn is_total_divergence(&self) -> Result<bool> {
        if !self.field_free_part().is_empty() {
            return Ok(false);
        }
        for base in self.base_symbols() {
            if !self.variational_derivative(&base)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Replace each symbol occurrence by a linear combination of symbols.
    /// Symbols for which `map` returns `None` are kept unchanged.
    pub fn substitute_linear<F>(&self, map: F) -> Self
    where
        F: Fn(&FieldSymbol) -> Option<Vec<(GaussRat, FieldSymbol)>>,
    {
        let mut out = Self::zero();
        for (key, c) in &self.terms {
            let mut expansion: Vec<(GaussRat, Vec<FieldSymbol>)> = vec![(c.clone(), Vec::new())];
            for sym in &key.factors {
                let alternatives = map(sym).unwrap_or_else(|| vec![(gint(1), *sym)]);
                let mut next = Vec::with_capacity(expansion.len() * alternatives.len());
                for (coeff, factors) in &expansion {
                    for (w, s) in &alternatives {
                        let mut fs = factors.clone();
                        fs.push(*s);
                        next.push((coeff.clone() * w.clone(), fs));
                    }
                }
                expansion = next;
            }
            for (coeff, mut factors) in expansion {
                factors.sort();
                out.accumulate(
                    Mono {
                        g2: key.g2,
                        factors,
                    },
                    coeff,
                );
            }
        }
        out
    }

    /// Canonical text rendering for golden files.
    pub fn render(&self) -> String {
        use crate::scalar::gauss_str;
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (key, c) in &self.terms {
            let mut pieces = Vec::new();
            let cs = gauss_str(c);
            if cs != "1" || (key.factors.is_empty() && key.g2 == 0) {
                if cs.contains(['+', '-', '/', 'i']) {
                    pieces.push(format!("({cs})"));
                } else {
                    pieces.push(cs);
                }
            }
            match key.g2 {
                0 => {}
                1 => pieces.push("g2".into()),
                n => pieces.push(format!("g2^{n}")),
            }
            for f in &key.factors {
                pieces.push(f.to_string());
            }
            parts.push(pieces.join("*"));
        }
        parts.join(" + ")
    }
}

fn rat_pow(base: &Rat, exp: u32) -> Rat {
    let mut acc = int(1);
    for _ in 0..exp {
        acc *= base.clone();
    }
    acc
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Structure constants and spatial orientation data.
///
/// Concrete numeric structure constants keep every identity decidable by
/// canonicalization; su(2) uses the Levi-Civita epsilon. su(3) is out of
/// scope: its constants involve sqrt(3) factors that do not live in the
/// rational coefficient field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieData {
    dim: u8,
    /// Flattened `f[I][J][K]`, 1-based indices.
    f: Vec<Rat>,
}

impl LieData {
    /// su(2) with `f^{IJK} = epsilon^{IJK}`.
    pub fn su2() -> Self {
        let dim = 3u8;
        let mut f = vec![int(0); 27];
        for i in 1..=3u8 {
            for j in 1..=3u8 {
                for k in 1..=3u8 {
                    f[Self::index(dim, i, j, k)] = int(eta(i, j, k));
                }
            }
        }
        LieData { dim, f }
    }

    /// Abelian truncation: three commuting internal directions.
    pub fn abelian() -> Self {
        LieData {
            dim: 3,
            f: vec![int(0); 27],
        }
    }

    /// Custom structure constants, validated for total antisymmetry and
    /// the Jacobi identity.
    pub fn with_structure_constants(dim: u8, f: Vec<Rat>) -> Result<Self> {
        if f.len() != usize::from(dim).pow(3) {
            return Err(Error::Index(format!(
                "expected {} structure constants, found {}",
                usize::from(dim).pow(3),
                f.len()
            )));
        }
        let lie = LieData { dim, f };
        for i in 1..=dim {
            for j in 1..=dim {
                for k in 1..=dim {
                    if lie.f(i, j, k) != -lie.f(j, i, k) || lie.f(i, j, k) != -lie.f(i, k, j) {
                        return Err(Error::Index(
                            "structure constants are not totally antisymmetric".into(),
                        ));
                    }
                }
            }
        }
        if !lie.jacobi_holds() {
            return Err(Error::Index("Jacobi identity fails".into()));
        }
        Ok(lie)
    }

    /// Unvalidated constructor for negative-control tests.
    #[doc(hidden)]
    pub fn raw_unchecked(dim: u8, f: Vec<Rat>) -> Self {
        LieData { dim, f }
    }

    fn index(dim: u8, i: u8, j: u8, k: u8) -> usize {
        let d = usize::from(dim);
        (usize::from(i) - 1) * d * d + (usize::from(j) - 1) * d + (usize::from(k) - 1)
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn internal_range(&self) -> std::ops::RangeInclusive<u8> {
        1..=self.dim
    }

    pub fn f(&self, i: u8, j: u8, k: u8) -> Rat {
        self.f[Self::index(self.dim, i, j, k)].clone()
    }

    pub fn f_gauss(&self, i: u8, j: u8, k: u8) -> GaussRat {
        real(self.f(i, j, k))
    }

    pub fn jacobi_holds(&self) -> bool {
        let d = self.dim;
        for i in 1..=d {
            for j in 1..=d {
                for k in 1..=d {
                    for l in 1..=d {
                        let mut sum = int(0);
                        for m in 1..=d {
                            sum += self.f(i, j, m) * self.f(m, k, l)
                                + self.f(k, i, m) * self.f(m, j, l)
                                + self.f(j, k, m) * self.f(m, i, l);
                        }
                        if !sum.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Spatial Levi-Civita symbol with `eta(1,2,3) = 1`.
pub fn eta(i: u8, j: u8, k: u8) -> i64 {
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1,
        _ => 0,
    }
}

/// Adjoint-valued quantity: one polynomial per internal index `1..=dim`.
pub type AdjointVec = Vec<DiffPoly>;

/// Zero adjoint vector.
pub fn adjoint_zero(lie: &LieData) -> AdjointVec {
    vec![DiffPoly::zero(); usize::from(lie.dim())]
}

/// Whether every component is the canonical zero polynomial.
pub fn adjoint_is_zero(v: &AdjointVec) -> bool {
    v.iter().all(DiffPoly::is_zero)
}

/// Gauge-covariant derivative of an adjoint vector:
/// `(D_dir v)^I = d_dir v^I + f^{IJK} A_dir^J v^K`.
pub fn covariant_derivative(lie: &LieData, v: &AdjointVec, dir: u8) -> Result<AdjointVec> {
    if v.len() != usize::from(lie.dim()) {
        return Err(Error::Index(format!(
            "adjoint vector must have {} components, found {}",
            lie.dim(),
            v.len()
        )));
    }
    let mut out = adjoint_zero(lie);
    for i in lie.internal_range() {
        let mut acc = v[usize::from(i) - 1].total_derivative(dir)?;
        for j in lie.internal_range() {
            for k in lie.internal_range() {
                let fijk = lie.f_gauss(i, j, k);
                if fijk.is_zero() {
                    continue;
                }
                let a = DiffPoly::field(FieldSymbol::a(dir, j));
                acc = acc.add(&a.mul(&v[usize::from(k) - 1]).scale(&fijk));
            }
        }
        out[usize::from(i) - 1] = acc;
    }
    Ok(out)
}

/// Curvature components
/// `F_{mu nu}^I = d_mu A_nu^I - d_nu A_mu^I + f^{IJK} A_mu^J A_nu^K`.
pub fn curvature(lie: &LieData, mu: u8, nu: u8) -> Result<AdjointVec> {
    let mut out = adjoint_zero(lie);
    if mu == nu {
        return Ok(out);
    }
    for i in lie.internal_range() {
        let da = DiffPoly::field(FieldSymbol::a(nu, i)).total_derivative(mu)?;
        let db = DiffPoly::field(FieldSymbol::a(mu, i)).total_derivative(nu)?;
        let mut acc = da.sub(&db);
        for j in lie.internal_range() {
            for k in lie.internal_range() {
                let fijk = lie.f_gauss(i, j, k);
                if fijk.is_zero() {
                    continue;
                }
                let prod = DiffPoly::field(FieldSymbol::a(mu, j))
                    .mul(&DiffPoly::field(FieldSymbol::a(nu, k)));
                acc = acc.add(&prod.scale(&fijk));
            }
        }
        out[usize::from(i) - 1] = acc;
    }
    Ok(out)
}

/// `eta^{ijk} D_i F_{jk}`, which must canonicalize to zero: the quadratic
/// terms cancel through the Jacobi identity of the concrete structure
/// constants.
pub fn bianchi_residual(lie: &LieData) -> Result<AdjointVec> {
    let mut acc = adjoint_zero(lie);
    for i in 1..=3u8 {
        for j in 1..=3u8 {
            for k in 1..=3u8 {
                let sign = eta(i, j, k);
                if sign == 0 {
                    continue;
                }
                let f_jk = curvature(lie, j, k)?;
                let d = covariant_derivative(lie, &f_jk, i)?;
                for (slot, comp) in d.iter().enumerate() {
                    acc[slot] = acc[slot].add(&comp.scale(&gint(sign)));
                }
            }
        }
    }
    Ok(acc)
}

/// Convenience wrapper: true iff the residual is canonical zero.
pub fn bianchi_check(lie: &LieData) -> Result<bool> {
    Ok(adjoint_is_zero(&bianchi_residual(lie)?))
}

/// Residual of the diffeomorphism identity, one polynomial per spatial
/// direction and internal index (spatial-major flattening).
///
/// With gauge parameters `eps = -xi^mu A_mu` and `eps_i = xi^mu F_{mu i}`,
/// the gauge transformation `-D_i eps + eps_i` must equal the Lie
/// derivative `xi^mu d_mu A_i + (d_i xi^mu) A_mu` identically, with no
/// equations of motion invoked.
pub fn diffeo_identity_residual(lie: &LieData) -> Result<Vec<DiffPoly>> {
    diffeo_residual_impl(lie, true)
}

/// Same residual with the connection term of `D_i eps` dropped: a
/// negative control that must NOT vanish for non-abelian data.
pub fn diffeo_identity_residual_no_commutator(lie: &LieData) -> Result<Vec<DiffPoly>> {
    diffeo_residual_impl(lie, false)
}

fn diffeo_residual_impl(lie: &LieData, with_commutator: bool) -> Result<Vec<DiffPoly>> {
    let dim = usize::from(lie.dim());
    // eps^I = -xi^mu A_mu^I
    let mut eps: AdjointVec = adjoint_zero(lie);
    for i in lie.internal_range() {
        let mut acc = DiffPoly::zero();
        for mu in 0..=3u8 {
            let term =
                DiffPoly::field(FieldSymbol::xi(mu)).mul(&DiffPoly::field(FieldSymbol::a(mu, i)));
            acc = acc.sub(&term);
        }
        eps[usize::from(i) - 1] = acc;
    }

    let mut out = Vec::with_capacity(3 * dim);
    for sp in 1..=3u8 {
        // eps_sp^I = xi^mu F_{mu sp}^I
        let mut eps_v: AdjointVec = adjoint_zero(lie);
        for mu in 0..=3u8 {
            let f = curvature(lie, mu, sp)?;
            let xi = DiffPoly::field(FieldSymbol::xi(mu));
            for (slot, comp) in f.iter().enumerate() {
                eps_v[slot] = eps_v[slot].add(&xi.mul(comp));
            }
        }

        let d_eps = if with_commutator {
            covariant_derivative(lie, &eps, sp)?
        } else {
            let mut plain = adjoint_zero(lie);
            for (slot, comp) in eps.iter().enumerate() {
                plain[slot] = comp.total_derivative(sp)?;
            }
            plain
        };

        for i in lie.internal_range() {
            let slot = usize::from(i) - 1;
            let gauge_shift = eps_v[slot].sub(&d_eps[slot]);

            // Lie derivative: xi^mu d_mu A_sp + (d_sp xi^mu) A_mu
            let mut lie_deriv = DiffPoly::zero();
            for mu in 0..=3u8 {
                let xi = DiffPoly::field(FieldSymbol::xi(mu));
                let a_sp = DiffPoly::field(FieldSymbol::a(sp, i));
                lie_deriv = lie_deriv.add(&xi.mul(&a_sp.total_derivative(mu)?));
                let dxi = xi.total_derivative(sp)?;
                lie_deriv = lie_deriv.add(&dxi.mul(&DiffPoly::field(FieldSymbol::a(mu, i))));
            }
            out.push(gauge_shift.sub(&lie_deriv));
        }
    }
    Ok(out)
}

/// Random differential polynomial for property tests: a few monomials in
/// `A`, `Pi` and parameter symbols with bounded derivative order.
pub fn random_diff_poly<R: Rng>(rng: &mut R, max_terms: usize, max_order: u8) -> DiffPoly {
    let mut p = DiffPoly::zero();
    let n_terms = rng.gen_range(1..=max_terms);
    for _ in 0..n_terms {
        let n_factors = rng.gen_range(1..=3);
        let mut factors = Vec::new();
        for _ in 0..n_factors {
            let internal = rng.gen_range(1..=3u8);
            let mut sym = match rng.gen_range(0..4) {
                0 => FieldSymbol::a(rng.gen_range(1..=3), internal),
                1 => FieldSymbol::pi(rng.gen_range(1..=3), internal),
                2 => FieldSymbol::eps(0, internal),
                _ => FieldSymbol::b0(rng.gen_range(1..=3), internal),
            };
            let order = rng.gen_range(0..=max_order.min(2));
            for _ in 0..order {
                sym = sym.derived(rng.gen_range(1..=3)).expect("below cap");
            }
            factors.push(sym);
        }
        factors.sort();
        let num = rng.gen_range(-4i64..=4);
        let den = rng.gen_range(1i64..=3);
        let coeff = real(crate::scalar::rat(if num == 0 { 1 } else { num }, den));
        let g2 = rng.gen_range(0..=1);
        let mut term = DiffPoly::zero();
        term.accumulate(Mono { g2, factors }, coeff);
        p = p.add(&term);
    }
    p
}

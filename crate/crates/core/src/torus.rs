//! Exact functional phase space: trigonometric-polynomial field
//! configurations on the 3-torus, smeared functionals and Poisson
//! brackets evaluated as exact Gaussian rationals.
//!
//! Integration is the normalized average over the torus, so no `(2 pi)^3`
//! factors appear anywhere; every smeared object uses the same
//! convention, which makes the bracket checks convention-free.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jets::{DiffPoly, FieldSymbol, LieData};
use crate::scalar::{gint, parse_rat, rat, rat_str, GaussRat, Rat, Scalar};

/// Trigonometric polynomial `sum_k [c_k cos(k.x) + s_k sin(k.x)]` over
/// wavevectors `k` in `Z^3`.
///
/// Wavevectors are stored in canonical orientation (first nonzero
/// component positive), using `cos(-k.x) = cos(k.x)` and
/// `sin(-k.x) = -sin(k.x)`; the sine coefficient at `k = 0` is
/// identically absent.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TrigPolyRing<C> {
    terms: BTreeMap<[i32; 3], (C, C)>,
}

/// Flip `k` to canonical orientation; the bool reports whether a flip
/// happened (sine coefficients change sign).
fn canonical_wave(k: [i32; 3]) -> ([i32; 3], bool) {
    for comp in k {
        if comp > 0 {
            return (k, false);
        }
        if comp < 0 {
            return ([-k[0], -k[1], -k[2]], true);
        }
    }
    (k, false)
}

impl<C: Scalar> TrigPolyRing<C> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        let mut p = Self::zero();
        p.add_cos([0, 0, 0], c);
        p
    }

    pub fn cos_wave(k: [i32; 3], c: C) -> Self {
        let mut p = Self::zero();
        p.add_cos(k, c);
        p
    }

    pub fn sin_wave(k: [i32; 3], c: C) -> Self {
        let mut p = Self::zero();
        p.add_sin(k, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32; 3], &(C, C))> {
        self.terms.iter()
    }

    fn cleanup(&mut self, k: [i32; 3]) {
        if let Some((c, s)) = self.terms.get(&k) {
            if c.is_zero() && s.is_zero() {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add_cos(&mut self, k: [i32; 3], c: C) {
        if c.is_zero() {
            return;
        }
        let (k, _) = canonical_wave(k);
        let entry = self
            .terms
            .entry(k)
            .or_insert_with(|| (C::zero(), C::zero()));
        entry.0 += c;
        self.cleanup(k);
    }

    pub fn add_sin(&mut self, k: [i32; 3], c: C) {
        if c.is_zero() {
            return;
        }
        let (kc, flipped) = canonical_wave(k);
        if kc == [0, 0, 0] {
            return; // sin(0) = 0
        }
        let entry = self
            .terms
            .entry(kc)
            .or_insert_with(|| (C::zero(), C::zero()));
        if flipped {
            entry.1 -= c;
        } else {
            entry.1 += c;
        }
        self.cleanup(kc);
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, (c, s)) in &other.terms {
            out.add_cos(*k, c.clone());
            out.add_sin(*k, s.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-C::one())
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero();
        for (k, (cc, sc)) in &self.terms {
            out.add_cos(*k, cc.clone() * c.clone());
            out.add_sin(*k, sc.clone() * c.clone());
        }
        out
    }

    /// Exact product via the angle-addition identities.
    pub fn mul(&self, other: &Self) -> Self {
        let half = C::one() / C::from_u32(2).expect("2 converts");
        let mut out = Self::zero();
        for (k1, (c1, s1)) in &self.terms {
            for (k2, (c2, s2)) in &other.terms {
                let sum = [k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2]];
                let diff = [k1[0] - k2[0], k1[1] - k2[1], k1[2] - k2[2]];
                // cos a cos b = (cos(a-b) + cos(a+b))/2
                let cc = c1.clone() * c2.clone() * half.clone();
                out.add_cos(diff, cc.clone());
                out.add_cos(sum, cc);
                // sin a sin b = (cos(a-b) - cos(a+b))/2
                let ss = s1.clone() * s2.clone() * half.clone();
                out.add_cos(diff, ss.clone());
                out.add_cos(sum, -ss);
                // sin a cos b = (sin(a+b) + sin(a-b))/2
                let sc = s1.clone() * c2.clone() * half.clone();
                out.add_sin(sum, sc.clone());
                out.add_sin(diff, sc);
                // cos a sin b = (sin(a+b) - sin(a-b))/2
                let cs = c1.clone() * s2.clone() * half.clone();
                out.add_sin(sum, cs.clone());
                out.add_sin(diff, -cs);
            }
        }
        out
    }

    /// Exact spatial derivative in direction `dir` (1..=3).
    pub fn diff(&self, dir: u8) -> Self {
        let idx = usize::from(dir) - 1;
        let mut out = Self::zero();
        for (k, (c, s)) in &self.terms {
            let kd = k[idx];
            if kd == 0 {
                continue;
            }
            let factor = C::from_i64(i64::from(kd)).expect("wavevector converts");
            // d cos(kx) = -k sin(kx); d sin(kx) = k cos(kx)
            out.add_sin(*k, -(c.clone() * factor.clone()));
            out.add_cos(*k, s.clone() * factor);
        }
        out
    }

    /// Normalized integral over the torus: the constant Fourier mode.
    pub fn average(&self) -> C {
        self.terms
            .get(&[0, 0, 0])
            .map(|(c, _)| c.clone())
            .unwrap_or_else(C::zero)
    }

    /// Largest wavevector component in absolute value.
    pub fn bandwidth(&self) -> i32 {
        self.terms
            .keys()
            .flat_map(|k| k.iter().map(|c| c.abs()))
            .max()
            .unwrap_or(0)
    }
}

/// Serialized form of one trigonometric term: coefficients as
/// `[re, im]` rational strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct WaveJson {
    k: [i32; 3],
    cos: [String; 2],
    sin: [String; 2],
}

fn gauss_to_strings(z: &GaussRat) -> [String; 2] {
    [rat_str(&z.re), rat_str(&z.im)]
}

fn gauss_from_strings(parts: &[String; 2]) -> Result<GaussRat> {
    let re = parse_rat(&parts[0]).map_err(Error::Config)?;
    let im = parse_rat(&parts[1]).map_err(Error::Config)?;
    Ok(GaussRat::new(re, im))
}

/// Exact field configuration: one trigonometric polynomial per base
/// field symbol, plus a numeric value for the coupling `g^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldConfig {
    assignments: BTreeMap<FieldSymbol, TrigPolyRing<GaussRat>>,
    pub g2: Rat,
}

impl FieldConfig {
    pub fn new(g2: Rat) -> Self {
        FieldConfig {
            assignments: BTreeMap::new(),
            g2,
        }
    }

    pub fn assign(&mut self, sym: FieldSymbol, value: TrigPolyRing<GaussRat>) {
        debug_assert_eq!(sym.order(), 0, "configs assign base fields only");
        self.assignments.insert(sym, value);
    }

    pub fn get(&self, sym: &FieldSymbol) -> Result<&TrigPolyRing<GaussRat>> {
        self.assignments
            .get(sym)
            .ok_or_else(|| Error::Config(format!("no assignment for field {sym}")))
    }

    /// Evaluate a differential polynomial on this configuration: every
    /// symbol is substituted by the indicated exact derivative of its
    /// trigonometric polynomial, the coupling by its numeric value.
    pub fn evaluate(&self, p: &DiffPoly) -> Result<TrigPolyRing<GaussRat>> {
        let numeric = p.subst_g2(&self.g2)?;
        let mut out = TrigPolyRing::zero();
        for (coeff, _, factors) in numeric.iter_terms() {
            let mut prod = TrigPolyRing::constant(gint(1));
            for sym in factors {
                if sym.deriv[0] > 0 {
                    return Err(Error::Config(format!(
                        "cannot evaluate time derivative {sym} on a spatial configuration"
                    )));
                }
                let mut value = self.get(&sym.base_symbol())?.clone();
                for dir in 1..=3u8 {
                    for _ in 0..sym.deriv[usize::from(dir)] {
                        value = value.diff(dir);
                    }
                }
                prod = prod.mul(&value);
            }
            out = out.add(&prod.scale(coeff));
        }
        Ok(out)
    }

    /// Normalized integral of a density over the torus.
    pub fn smear(&self, density: &DiffPoly) -> Result<GaussRat> {
        Ok(self.evaluate(density)?.average())
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct ConfigJson {
            g2: String,
            fields: BTreeMap<String, Vec<WaveJson>>,
        }
        let mut fields = BTreeMap::new();
        for (sym, poly) in &self.assignments {
            let waves: Vec<WaveJson> = poly
                .terms()
                .map(|(k, (c, s))| WaveJson {
                    k: *k,
                    cos: gauss_to_strings(c),
                    sin: gauss_to_strings(s),
                })
                .collect();
            fields.insert(sym.to_string(), waves);
        }
        serde_json::to_string_pretty(&ConfigJson {
            g2: rat_str(&self.g2),
            fields,
        })
        .expect("config serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct ConfigJson {
            g2: String,
            fields: BTreeMap<String, Vec<WaveJson>>,
        }
        let parsed: ConfigJson =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let mut cfg = FieldConfig::new(parse_rat(&parsed.g2).map_err(Error::Config)?);
        for (name, waves) in parsed.fields {
            let sym = FieldSymbol::parse_base(&name)?;
            let mut poly = TrigPolyRing::zero();
            for w in waves {
                poly.add_cos(w.k, gauss_from_strings(&w.cos)?);
                poly.add_sin(w.k, gauss_from_strings(&w.sin)?);
            }
            cfg.assign(sym, poly);
        }
        Ok(cfg)
    }
}

/// The base fields every constraint check needs assigned: canonical pairs
/// `(A_i, Pi^i)`, multipliers `A_0`, `B_{0i}`, and parameter slots 0..=2
/// for scalars and vectors.
pub fn standard_fields(lie: &LieData) -> Vec<FieldSymbol> {
    let mut out = Vec::new();
    for n in lie.internal_range() {
        out.push(FieldSymbol::a(0, n));
        for i in 1..=3u8 {
            out.push(FieldSymbol::a(i, n));
            out.push(FieldSymbol::pi(i, n));
            out.push(FieldSymbol::b0(i, n));
        }
        for slot in 0..=2u8 {
            out.push(FieldSymbol::eps(slot, n));
            for i in 1..=3u8 {
                out.push(FieldSymbol::epsv(slot, i, n));
            }
        }
    }
    out
}

/// Draw a random trigonometric polynomial with small rational
/// coefficients and wavevectors bounded by `max_wave`.
pub fn random_trig_poly<R: Rng>(
    rng: &mut R,
    max_wave: i32,
    n_terms: usize,
) -> TrigPolyRing<GaussRat> {
    let mut poly = TrigPolyRing::zero();
    for _ in 0..n_terms {
        let k = [
            rng.gen_range(-max_wave..=max_wave),
            rng.gen_range(-max_wave..=max_wave),
            rng.gen_range(-max_wave..=max_wave),
        ];
        let num = rng.gen_range(-3i64..=3);
        let den = rng.gen_range(1i64..=3);
        let coeff = crate::scalar::real(rat(if num == 0 { 1 } else { num }, den));
        if rng.gen_bool(0.5) {
            poly.add_cos(k, coeff);
        } else {
            poly.add_sin(k, coeff);
        }
    }
    poly
}

/// Random configuration over the standard field set, with wavevectors
/// bounded by `max_wave` (default cutoff in callers: 2).
pub fn random_config<R: Rng>(rng: &mut R, lie: &LieData, g2: &Rat, max_wave: i32) -> FieldConfig {
    let mut cfg = FieldConfig::new(g2.clone());
    for sym in standard_fields(lie) {
        let n_terms = rng.gen_range(1..=3);
        cfg.assign(sym, random_trig_poly(rng, max_wave, n_terms));
    }
    cfg
}

/// A local density with a label, smeared by the normalized torus average.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmearedFunctional {
    pub label: String,
    pub density: DiffPoly,
}

impl SmearedFunctional {
    pub fn new(label: impl Into<String>, density: DiffPoly) -> Self {
        SmearedFunctional {
            label: label.into(),
            density,
        }
    }

    pub fn evaluate(&self, cfg: &FieldConfig) -> Result<GaussRat> {
        cfg.smear(&self.density)
    }
}

/// Symbolic bracket density of two smeared functionals:
/// `sum_{i,I} [dF/dA_i^I dG/dPi^{iI} - dG/dA_i^I dF/dPi^{iI}]`.
///
/// Any total-divergence ambiguity in this representative is invisible to
/// both smearing and further variational derivatives, so composing
/// brackets through it is exact.
pub fn bracket_density(f: &DiffPoly, g: &DiffPoly, internal_dim: u8) -> Result<DiffPoly> {
    let mut out = DiffPoly::zero();
    for i in 1..=3u8 {
        for n in 1..=internal_dim {
            let a = FieldSymbol::a(i, n);
            let pi = FieldSymbol::pi(i, n);
            let df_da = f.variational_derivative(&a)?;
            let dg_dpi = g.variational_derivative(&pi)?;
            let dg_da = g.variational_derivative(&a)?;
            let df_dpi = f.variational_derivative(&pi)?;
            out = out.add(&df_da.mul(&dg_dpi)).sub(&dg_da.mul(&df_dpi));
        }
    }
    Ok(out)
}

/// The bracket of two smeared functionals, re-expressed as a smeared
/// functional (enabling nested brackets without distribution theory).
pub fn bracket_functional(
    f: &SmearedFunctional,
    g: &SmearedFunctional,
    internal_dim: u8,
) -> Result<SmearedFunctional> {
    Ok(SmearedFunctional::new(
        format!("{{{}, {}}}", f.label, g.label),
        bracket_density(&f.density, &g.density, internal_dim)?,
    ))
}

/// Exact Poisson bracket of two smeared functionals on a configuration.
pub fn poisson_bracket(
    f: &SmearedFunctional,
    g: &SmearedFunctional,
    internal_dim: u8,
    cfg: &FieldConfig,
) -> Result<GaussRat> {
    cfg.smear(&bracket_density(&f.density, &g.density, internal_dim)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{grat, imag, int, real};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type Trig = TrigPolyRing<GaussRat>;

    fn cos1() -> Trig {
        Trig::cos_wave([1, 0, 0], gint(1))
    }

    #[test]
    fn product_formula() {
        // cos^2(x1) = 1/2 + cos(2 x1)/2
        let sq = cos1().mul(&cos1());
        let expected = Trig::constant(grat(1, 2)).add(&Trig::cos_wave([2, 0, 0], grat(1, 2)));
        assert_eq!(sq, expected);
    }

    #[test]
    fn derivative_examples() {
        let s = Trig::sin_wave([1, 0, 0], gint(1));
        assert_eq!(s.diff(1), cos1());
        assert!(cos1().diff(2).is_zero());
        assert_eq!(cos1().diff(1).diff(1), cos1().neg());
    }

    #[test]
    fn averages() {
        assert_eq!(cos1().average(), gint(0));
        assert_eq!(cos1().mul(&cos1()).average(), grat(1, 2));
        assert_eq!(Trig::constant(grat(-2, 7)).average(), grat(-2, 7));
    }

    #[test]
    fn canonical_orientation() {
        // cos(-k.x) stores as cos(k.x); sin(-k.x) as -sin(k.x)
        let a = Trig::cos_wave([-1, 2, 0], gint(1));
        let b = Trig::cos_wave([1, -2, 0], gint(1));
        assert_eq!(a, b);
        let s = Trig::sin_wave([-1, 0, 0], gint(1));
        assert_eq!(s, Trig::sin_wave([1, 0, 0], gint(-1)));
        // sin at zero wavevector vanishes identically
        assert!(Trig::sin_wave([0, 0, 0], gint(5)).is_zero());
    }

    #[test]
    fn orthogonality() {
        let a = Trig::cos_wave([1, 0, 0], gint(1));
        let b = Trig::cos_wave([0, 1, 0], gint(1));
        assert_eq!(a.mul(&b).average(), gint(0));
        let s = Trig::sin_wave([1, 0, 0], gint(1));
        assert_eq!(a.mul(&s).average(), gint(0));
        assert_eq!(s.mul(&s).average(), grat(1, 2));
    }

    #[test]
    fn evaluate_field_and_derivative() {
        let lie = LieData::su2();
        let mut cfg = FieldConfig::new(int(1));
        for sym in standard_fields(&lie) {
            cfg.assign(sym, Trig::zero());
        }
        cfg.assign(FieldSymbol::a(1, 1), Trig::cos_wave([0, 1, 0], gint(1)));

        let p = DiffPoly::field(FieldSymbol::a(1, 1));
        assert_eq!(
            cfg.evaluate(&p).unwrap(),
            Trig::cos_wave([0, 1, 0], gint(1))
        );

        let dp = p.total_derivative(2).unwrap();
        assert_eq!(
            cfg.evaluate(&dp).unwrap(),
            Trig::sin_wave([0, 1, 0], gint(-1))
        );

        let missing = FieldConfig::new(int(1));
        assert!(matches!(missing.evaluate(&p), Err(Error::Config(_))));
    }

    #[test]
    fn evaluate_matches_pointwise_floats() {
        // independent cross-check: evaluate the nonabelian curvature
        // symbolically, then compare with direct floating-point
        // evaluation of the same expression at sample points
        let lie = LieData::su2();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut cfg = FieldConfig::new(int(1));
        for sym in standard_fields(&lie) {
            cfg.assign(sym, random_trig_poly(&mut rng, 2, 2));
        }
        let f12 = crate::jets::curvature(&lie, 1, 2).unwrap();

        fn rat_f64(r: &Rat) -> f64 {
            use num::ToPrimitive;
            r.to_f64().unwrap()
        }
        let sample = |poly: &Trig, x: [f64; 3]| -> f64 {
            let mut acc = 0.0;
            for (k, (c, s)) in poly.terms() {
                let phase =
                    f64::from(k[0]) * x[0] + f64::from(k[1]) * x[1] + f64::from(k[2]) * x[2];
                assert_eq!(c.im, int(0));
                assert_eq!(s.im, int(0));
                acc += rat_f64(&c.re) * phase.cos() + rat_f64(&s.re) * phase.sin();
            }
            acc
        };

        for comp in &f12 {
            let exact = cfg.evaluate(comp).unwrap();
            for x in [[0.3, -1.2, 0.7], [2.1, 0.4, -0.9]] {
                let mut direct = 0.0;
                for (coeff, _, factors) in comp.iter_terms() {
                    assert_eq!(coeff.im, int(0));
                    let mut prod = rat_f64(&coeff.re);
                    for sym in factors {
                        let base = cfg.get(&sym.base_symbol()).unwrap();
                        let mut value = base.clone();
                        for dir in 1..=3u8 {
                            for _ in 0..sym.deriv[usize::from(dir)] {
                                value = value.diff(dir);
                            }
                        }
                        prod *= sample(&value, x);
                    }
                    direct += prod;
                }
                let symbolic = sample(&exact, x);
                assert!(
                    (symbolic - direct).abs() < 1e-9,
                    "float cross-check failed: {symbolic} vs {direct}"
                );
            }
        }
    }

    #[test]
    fn canonical_pair_bracket() {
        // F = <eps_I A_1^I>, G = <eta_J Pi^{1J}> gives <eps_I eta_I>
        let lie = LieData::su2();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let cfg = random_config(&mut rng, &lie, &int(1), 2);

        let mut f_density = DiffPoly::zero();
        let mut g_density = DiffPoly::zero();
        let mut expected = gint(0);
        for n in 1..=3u8 {
            let eps = DiffPoly::field(FieldSymbol::eps(0, n));
            let eta = DiffPoly::field(FieldSymbol::eps(1, n));
            f_density = f_density.add(&eps.mul(&DiffPoly::field(FieldSymbol::a(1, n))));
            g_density = g_density.add(&eta.mul(&DiffPoly::field(FieldSymbol::pi(1, n))));
            let prod = cfg
                .get(&FieldSymbol::eps(0, n))
                .unwrap()
                .mul(cfg.get(&FieldSymbol::eps(1, n)).unwrap());
            expected += prod.average();
        }
        let f = SmearedFunctional::new("F", f_density);
        let g = SmearedFunctional::new("G", g_density);
        assert_eq!(poisson_bracket(&f, &g, 3, &cfg).unwrap(), expected);
        // antisymmetry at the sharpest point: {F, F} = 0
        assert_eq!(poisson_bracket(&f, &f, 3, &cfg).unwrap(), gint(0));
    }

    #[test]
    fn bracket_antisymmetry_on_random_functionals() {
        let lie = LieData::su2();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..5 {
            let cfg = random_config(&mut rng, &lie, &int(1), 1);
            let f = SmearedFunctional::new("F", crate::jets::random_diff_poly(&mut rng, 3, 1));
            let g = SmearedFunctional::new("G", crate::jets::random_diff_poly(&mut rng, 3, 1));
            let fg = poisson_bracket(&f, &g, 3, &cfg).unwrap();
            let gf = poisson_bracket(&g, &f, 3, &cfg).unwrap();
            assert_eq!(fg, -gf);
        }
    }

    #[test]
    fn discrete_integration_by_parts() {
        let lie = LieData::su2();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let cfg = random_config(&mut rng, &lie, &int(1), 2);
            let q = crate::jets::random_diff_poly(&mut rng, 3, 1);
            for dir in 1..=3u8 {
                let Ok(div) = q.total_derivative(dir) else {
                    continue;
                };
                assert_eq!(cfg.smear(&div).unwrap(), gint(0));
            }
        }
    }

    #[test]
    fn config_json_roundtrip() {
        let lie = LieData::su2();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut cfg = random_config(&mut rng, &lie, &rat(2, 3), 2);
        // exercise a complex coefficient too
        cfg.assign(
            FieldSymbol::xi(0),
            Trig::cos_wave([1, 1, 0], real(rat(1, 2)) + imag()),
        );
        let text = cfg.to_json();
        let back = FieldConfig::from_json(&text).unwrap();
        assert_eq!(back, cfg);
    }
}

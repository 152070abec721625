//! The product engine and its caches.
//!
//! Products in the Milnor basis are computed from the defining identity
//! `[Delta(alpha), theta_1 (x) theta_2] = <alpha, theta_1 theta_2>`: for a
//! homogeneous target bidegree, every candidate `tau^a rho^b * dual(M)` is
//! enumerated, and the coefficient of each candidate is read off by pairing
//! the pruned coproduct of `M` against the supports of the factors. There is
//! no closed motivic product formula, so this pairing route is the canonical
//! one.
//!
//! An [`Algebra`] value carries the configuration (generator index cap,
//! topological degree guard) and the memo tables. Caches only ever hold
//! canonical values keyed by canonical inputs, so hits and misses are
//! observationally identical; everything is behind `RwLock`s and safe to
//! share across threads.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::cartan::AdmissibleSequence;
use crate::coalgebra::{
    self, expand_coproduct, filter_left, tensor_multiply_filtered, Caps, TensorElement,
};
use crate::dual::{self, DualMonomial};
use crate::error::AlgebraError;
use crate::scalar::{Bidegree, HScalar};
use crate::steenrod::{MilnorMonomial, SteenrodElement};

/// Engine configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlgebraConfig {
    /// Largest generator index used by enumeration (hard cap 63).
    pub max_index: u32,
    /// Hard bound on the topological degree of any product target.
    pub degree_guard: i32,
}

impl Default for AlgebraConfig {
    fn default() -> Self {
        AlgebraConfig {
            max_index: crate::MAX_GENERATOR_INDEX,
            degree_guard: 300,
        }
    }
}

/// For each square-shaped left factor of `Delta(M)` (that is, `xi_1^s` or
/// `tau_0 xi_1^s`, the support shapes of the `Sq^k`), the right factors and
/// coefficients that accompany it.
type SqFiber = HashMap<DualMonomial, Vec<(DualMonomial, HScalar)>>;

/// Inverted fiber index for one bidegree slice: for every right monomial
/// appearing in any candidate's square-shaped fiber, the candidates it pairs
/// with. Lets a product `Sq^k * y` touch only actual support matches.
struct SliceIndex {
    by_right: HashMap<DualMonomial, Vec<(u32, DualMonomial, HScalar)>>,
}

type Cache<K, V> = RwLock<HashMap<K, Arc<V>>>;

/// Shared algebra context: configuration plus memo tables.
pub struct Algebra {
    config: AlgebraConfig,
    enumerate_cache: Cache<Bidegree, Vec<(DualMonomial, u32, u32)>>,
    coproduct_cache: Cache<DualMonomial, TensorElement>,
    basis_cache: Cache<(MilnorMonomial, MilnorMonomial), SteenrodElement>,
    fiber_cache: Cache<DualMonomial, SqFiber>,
    slice_index_cache: Cache<Bidegree, SliceIndex>,
    pub(crate) admissible_cache: Cache<AdmissibleSequence, SteenrodElement>,
}

impl Default for Algebra {
    fn default() -> Self {
        Algebra::new(AlgebraConfig::default())
    }
}

impl Algebra {
    pub fn new(config: AlgebraConfig) -> Self {
        Algebra {
            config,
            enumerate_cache: RwLock::new(HashMap::new()),
            coproduct_cache: RwLock::new(HashMap::new()),
            basis_cache: RwLock::new(HashMap::new()),
            fiber_cache: RwLock::new(HashMap::new()),
            slice_index_cache: RwLock::new(HashMap::new()),
            admissible_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn config(&self) -> AlgebraConfig {
        self.config
    }

    pub fn max_index(&self) -> u32 {
        self.config.max_index
    }

    pub fn degree_guard(&self) -> i32 {
        self.config.degree_guard
    }

    pub(crate) fn check_guard(&self, target: Bidegree) -> Result<(), AlgebraError> {
        if target.p > self.config.degree_guard {
            Err(AlgebraError::DegreeGuardExceeded {
                degree: target.p,
                guard: self.config.degree_guard,
            })
        } else {
            Ok(())
        }
    }

    /// Memoized [`dual::enumerate_monomials`] at this algebra's index cap.
    pub fn enumerate_monomials(&self, target: Bidegree) -> Arc<Vec<(DualMonomial, u32, u32)>> {
        if let Some(hit) = self.enumerate_cache.read().unwrap().get(&target) {
            return Arc::clone(hit);
        }
        let fresh = Arc::new(dual::enumerate_monomials(target, self.config.max_index));
        self.enumerate_cache
            .write()
            .unwrap()
            .entry(target)
            .or_insert(fresh)
            .clone()
    }

    /// Full coproduct of a monomial, memoized.
    pub fn coproduct(&self, m: &DualMonomial) -> Result<Arc<TensorElement>, AlgebraError> {
        if let Some(hit) = self.coproduct_cache.read().unwrap().get(m) {
            return Ok(Arc::clone(hit));
        }
        let fresh = Arc::new(expand_coproduct(m, Caps::UNBOUNDED)?);
        Ok(self
            .coproduct_cache
            .write()
            .unwrap()
            .entry(m.clone())
            .or_insert(fresh)
            .clone())
    }

    /// Coproduct restricted to terms whose factors fit under the caps;
    /// partial products beyond either cap are discarded early.
    pub fn pruned_coproduct(
        &self,
        m: &DualMonomial,
        left_cap: Bidegree,
        right_cap: Bidegree,
    ) -> Result<TensorElement, AlgebraError> {
        expand_coproduct(m, Caps::new(left_cap, right_cap))
    }

    /// The square-shaped-left fiber of `Delta(m)`, memoized. Keyed by the
    /// monomial alone so one expansion serves every `Sq^k * x` product.
    fn sq_fiber(&self, m: &DualMonomial) -> Result<Arc<SqFiber>, AlgebraError> {
        if let Some(hit) = self.fiber_cache.read().unwrap().get(m) {
            return Ok(Arc::clone(hit));
        }
        let factors = coalgebra::coproduct_factors(m, Caps::UNBOUNDED)?;
        let mut acc = TensorElement::one();
        for (f, _) in &factors {
            let f = filter_left(f, sq_shaped);
            acc = tensor_multiply_filtered(&acc, &f, sq_shaped)?;
            if acc.is_zero() {
                break;
            }
        }
        let mut fiber: SqFiber = HashMap::new();
        for ((l, r), h) in acc.terms() {
            fiber
                .entry(l.clone())
                .or_default()
                .push((r.clone(), h.clone()));
        }
        let fresh = Arc::new(fiber);
        Ok(self
            .fiber_cache
            .write()
            .unwrap()
            .entry(m.clone())
            .or_insert(fresh)
            .clone())
    }

    /// Product of two basis elements, memoized.
    pub(crate) fn basis_product(
        &self,
        a: &MilnorMonomial,
        b: &MilnorMonomial,
    ) -> Result<Arc<SteenrodElement>, AlgebraError> {
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.basis_cache.read().unwrap().get(&key) {
            return Ok(Arc::clone(hit));
        }
        if a.is_one() {
            return Ok(Arc::new(SteenrodElement::from_monomial(b.clone())));
        }
        if b.is_one() {
            return Ok(Arc::new(SteenrodElement::from_monomial(a.clone())));
        }
        let target = a.degree() + b.degree();
        self.check_guard(target)?;
        let mut out = SteenrodElement::zero();
        let use_fiber = sq_shaped(a.dual());
        for (m, ca, cb) in self.enumerate_monomials(target).iter() {
            let h = if use_fiber {
                let fiber = self.sq_fiber(m)?;
                fiber
                    .get(a.dual())
                    .map(|entries| {
                        entries
                            .iter()
                            .filter(|(r, _)| r == b.dual())
                            .fold(HScalar::zero(), |acc, (_, h)| acc.add(h))
                    })
                    .unwrap_or_default()
            } else {
                let budget = Bidegree::of_coefficient(*ca, *cb);
                let expansion = coalgebra::expand_exact(m, a.dual(), b.dual(), budget)?;
                expansion.coefficient(a.dual(), b.dual())
            };
            if !h.is_zero() {
                debug_assert_eq!(h, HScalar::monomial(*ca, *cb));
                out.add_term(MilnorMonomial::from_dual(m.clone()), h);
            }
        }
        let fresh = Arc::new(out);
        Ok(self
            .basis_cache
            .write()
            .unwrap()
            .entry(key)
            .or_insert(fresh)
            .clone())
    }

    /// Product in the Milnor basis. Inputs of mixed bidegree are split into
    /// homogeneous components and recombined.
    ///
    /// Coefficients in the right factor cannot simply be pulled out front:
    /// the operations are not `H`-linear (`Sq^1 tau = tau Sq^1 + rho`), so a
    /// coefficient `h` crossing the left factor acts through the right module
    /// structure, `<alpha, theta*h> = <eta_R(h)*alpha, theta>`. Powers of
    /// `rho` are central (`eta_R(rho) = rho`) and those do pull out.
    pub fn product(
        &self,
        t1: &SteenrodElement,
        t2: &SteenrodElement,
    ) -> Result<SteenrodElement, AlgebraError> {
        let mut out = SteenrodElement::zero();
        for x in t1.homogeneous_components().values() {
            for y in t2.homogeneous_components().values() {
                out = out.add(&self.product_homogeneous(x, y)?);
            }
        }
        Ok(out)
    }

    fn product_homogeneous(
        &self,
        x: &SteenrodElement,
        y: &SteenrodElement,
    ) -> Result<SteenrodElement, AlgebraError> {
        if x.is_zero() || y.is_zero() {
            return Ok(SteenrodElement::zero());
        }
        let dx = x.homogeneous_degree().expect("homogeneous by split");
        let dy = y.homogeneous_degree().expect("homogeneous by split");
        let target = dx + dy;
        self.check_guard(target)?;

        // single square-shaped left factor against a wide right support:
        // one enumeration of the target slice, each candidate's fiber dotted
        // against the whole support of `y`
        if x.term_count() == 1 && y.term_count() >= 3 {
            let (ma, _) = x.terms().next().expect("nonempty");
            if sq_shaped(ma.dual()) {
                return self.product_via_fibers(x, y, target);
            }
        }

        // tau-free right coefficients are central and split off, so the
        // bilinear route through the memoized basis products is exact
        if y.terms().all(|(_, c)| tau_free(c)) {
            let mut out = SteenrodElement::zero();
            for (ma, ca) in x.terms() {
                for (mb, cb) in y.terms() {
                    let p = self.basis_product(ma, mb)?;
                    out = out.add(&p.scale(&ca.mul(cb)));
                }
            }
            return Ok(out);
        }

        // general case: carry each right coefficient across as eta_R of it
        let mut xcap = Bidegree::ZERO;
        for (ma, _) in x.terms() {
            let d = ma.degree();
            xcap = Bidegree::new(xcap.p.max(d.p), xcap.q.max(d.q));
        }
        let mut ycap = Bidegree::ZERO;
        for (mb, _) in y.terms() {
            let d = mb.degree();
            ycap = Bidegree::new(ycap.p.max(d.p), ycap.q.max(d.q));
        }
        let caps = Caps::new(xcap, ycap);
        let mut out = SteenrodElement::zero();
        for (m, _, _) in self.enumerate_monomials(target).iter() {
            let expansion = expand_coproduct(m, caps)?;
            let mut total = HScalar::zero();
            for ((a, b), h) in expansion.terms() {
                let cb = y.coefficient(&MilnorMonomial::from_dual(b.clone()));
                if cb.is_zero() {
                    continue;
                }
                total = total.add(&self.carried_match(a, h, &cb, x)?);
            }
            out.add_term(MilnorMonomial::from_dual(m.clone()), total);
        }
        Ok(out)
    }

    /// `sum_{A'} <eta_R(cb) * h * A, A'> * coeff_x(A')`.
    fn carried_match(
        &self,
        a: &DualMonomial,
        h: &HScalar,
        cb: &HScalar,
        x: &SteenrodElement,
    ) -> Result<HScalar, AlgebraError> {
        if tau_free(cb) {
            let xa = x.coefficient(&MilnorMonomial::from_dual(a.clone()));
            return Ok(h.mul(cb).mul(&xa));
        }
        let mut left = crate::dual::DualElement::zero();
        left.add_term(a.clone(), h.clone());
        let carried = crate::dual::multiply_elements(&left, &coalgebra::eta_r(cb)?)?;
        let mut total = HScalar::zero();
        for (c, e) in carried.terms() {
            let xa = x.coefficient(&MilnorMonomial::from_dual(c.clone()));
            if !xa.is_zero() {
                total = total.add(&e.mul(&xa));
            }
        }
        Ok(total)
    }

    /// The inverted fiber index of a slice, memoized.
    fn slice_index(&self, target: Bidegree) -> Result<Arc<SliceIndex>, AlgebraError> {
        if let Some(hit) = self.slice_index_cache.read().unwrap().get(&target) {
            return Ok(Arc::clone(hit));
        }
        let mut by_right: HashMap<DualMonomial, Vec<(u32, DualMonomial, HScalar)>> =
            HashMap::new();
        for (mi, (m, _, _)) in self.enumerate_monomials(target).iter().enumerate() {
            let fiber = self.sq_fiber(m)?;
            for (a_key, entries) in fiber.iter() {
                for (r, h) in entries {
                    by_right.entry(r.clone()).or_default().push((
                        mi as u32,
                        a_key.clone(),
                        h.clone(),
                    ));
                }
            }
        }
        let fresh = Arc::new(SliceIndex { by_right });
        Ok(self
            .slice_index_cache
            .write()
            .unwrap()
            .entry(target)
            .or_insert(fresh)
            .clone())
    }

    /// Square-shaped single left factor (`x` is one term `ca * dual(a0)`)
    /// against a wide right support, through the inverted slice index: the
    /// work done is proportional to the support matches, not the slice size.
    ///
    /// The coefficient crossing is cached per `(fiber key, tau^a rho^b)`:
    /// `w = <eta_R(tau^a rho^b) * A_key, a0>` repeats across candidates and
    /// entries, and the distinct key space is tiny.
    fn product_via_fibers(
        &self,
        x: &SteenrodElement,
        y: &SteenrodElement,
        target: Bidegree,
    ) -> Result<SteenrodElement, AlgebraError> {
        let (ma, ca) = x.terms().next().expect("single term");
        let a0 = ma.dual();
        let d0 = a0.degree();
        let index = self.slice_index(target)?;
        let candidates = self.enumerate_monomials(target);
        let mut acc: Vec<HScalar> = vec![HScalar::zero(); candidates.len()];
        let mut w_cache: HashMap<DualMonomial, HashMap<(u32, u32), HScalar>> = HashMap::new();
        for (mb, yc) in y.terms() {
            let Some(entries) = index.by_right.get(mb.dual()) else {
                continue;
            };
            let yc_tau_free = tau_free(yc);
            for (mi, a_key, h) in entries {
                if yc_tau_free {
                    if a_key == a0 {
                        acc[*mi as usize].add_mul_assign(h, yc);
                    }
                    continue;
                }
                // eta_R multiplication only grows the monomial, so keys past
                // the left target can never land on it
                let dk = a_key.degree();
                if dk.p > d0.p
                    || dk.q > d0.q
                    || a_key.xi_exponent(1) > a0.xi_exponent(1)
                    || a_key.xi_exponents().len() > a0.xi_exponents().len()
                {
                    continue;
                }
                if !w_cache.contains_key(a_key) {
                    w_cache.insert(a_key.clone(), HashMap::new());
                }
                for (ea, eb) in yc.terms() {
                    let by_coeff = w_cache.get_mut(a_key).expect("just inserted");
                    let w = match by_coeff.get(&(ea, eb)) {
                        Some(w) => w.clone(),
                        None => {
                            let carried = crate::dual::multiply_elements(
                                &crate::dual::DualElement::from_monomial(a_key.clone()),
                                &coalgebra::eta_r(&HScalar::monomial(ea, eb))?,
                            )?;
                            let w = carried.coefficient(a0);
                            by_coeff.insert((ea, eb), w.clone());
                            w
                        }
                    };
                    if !w.is_zero() {
                        acc[*mi as usize].add_mul_assign(h, &w);
                    }
                }
            }
        }
        let mut out = SteenrodElement::zero();
        for ((m, _, _), total) in candidates.iter().zip(acc) {
            out.add_term(MilnorMonomial::from_dual(m.clone()), total.mul(ca));
        }
        Ok(out)
    }

    /// Snapshot of the memoized basis products, for an on-disk cache.
    pub fn export_products(&self) -> Vec<(MilnorMonomial, MilnorMonomial, SteenrodElement)> {
        let cache = self.basis_cache.read().unwrap();
        let mut items: Vec<_> = cache
            .iter()
            .map(|((a, b), v)| (a.clone(), b.clone(), (**v).clone()))
            .collect();
        items.sort_by(|x, y| (&x.0, &x.1).cmp(&(&y.0, &y.1)));
        items
    }

    /// Pre-seed the basis-product memo; results must already be canonical.
    pub fn import_products(
        &self,
        items: impl IntoIterator<Item = (MilnorMonomial, MilnorMonomial, SteenrodElement)>,
    ) {
        let mut cache = self.basis_cache.write().unwrap();
        for (a, b, v) in items {
            cache.entry((a, b)).or_insert_with(|| Arc::new(v));
        }
    }
}

/// Support shape of the squares: `xi_1^s` (even `Sq`) or `tau_0 xi_1^s` (odd).
fn sq_shaped(m: &DualMonomial) -> bool {
    m.tau_bits() & !1 == 0 && m.xi_exponents().len() <= 1
}

/// No `tau` in any monomial; such coefficients are central.
fn tau_free(h: &HScalar) -> bool {
    h.terms().all(|(a, _)| a == 0)
}

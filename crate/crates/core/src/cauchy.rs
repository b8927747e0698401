//! Left adjoint semidistributors, their convergence, Cauchy completeness and
//! the Cauchy completion with its universal property.

use std::ops::ControlFlow;
use std::sync::Arc;

use crate::budget::{Budget, Exhausted, Meter, SearchOutcome};
use crate::enumerate::{for_each_semidistributor, object_maps, regular_semidistributors};
use crate::error::{QError, Result};
use crate::lattice::Elem;
use crate::matrix::{compose_unchecked, leq_unchecked, lifting_unchecked, QMatrix, TypedSet};
use crate::morita::is_inverse_pair;
use crate::quantaloid::{Arrow, ObjId};
use crate::structure::{
    check_object_map, semifunctors_equivalent, EnrichedStructure, ObjectMap, SemiDistributor,
};

/// `Φ ⊣ Φ*` in the calculus of regular semidistributors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjointPair {
    pub left: SemiDistributor,
    pub right: SemiDistributor,
}

/// The canonical right adjoint candidate `A ⊗ [Φ, B] ⊗ B` of `Φ: A ⇸ B`.
///
/// Between categories this is just `[Φ, B]`, since that lifting is already a distributor.
pub fn right_adjoint_candidate(phi: &SemiDistributor) -> Result<QMatrix> {
    if !phi.is_regular() {
        return Err(QError::NotRegularSemidistributor);
    }
    Ok(candidate_unchecked(phi))
}

fn candidate_unchecked(phi: &SemiDistributor) -> QMatrix {
    let q = phi.base();
    let (a, b) = (phi.dom().hom_matrix(), phi.cod().hom_matrix());
    let x = lifting_unchecked(q, phi.mat(), b);
    compose_unchecked(q, a, &compose_unchecked(q, &x, b))
}

/// Unit `A <= Ψ ⊗ Φ` and counit `Φ ⊗ Ψ <= B` for `Φ: A ⇸ B`, `Ψ: B ⇸ A`.
pub fn is_adjoint_pair(phi: &SemiDistributor, psi: &SemiDistributor) -> Result<bool> {
    if psi.dom() != phi.cod() || psi.cod() != phi.dom() {
        return Err(QError::ShapeMismatch("the pair must run in opposite directions between the same structures".into()));
    }
    Ok(adjoint_unchecked(phi, psi.mat()))
}

fn adjoint_unchecked(phi: &SemiDistributor, psi: &QMatrix) -> bool {
    let q = phi.base();
    leq_unchecked(q, phi.dom().hom_matrix(), &compose_unchecked(q, psi, phi.mat()))
        && leq_unchecked(q, &compose_unchecked(q, phi.mat(), psi), phi.cod().hom_matrix())
}

/// The adjoint pair on `Φ` if `Φ` is a left adjoint; the right adjoint is then the canonical candidate.
pub fn is_left_adjoint(phi: &SemiDistributor) -> Result<Option<AdjointPair>> {
    if !phi.is_regular() {
        return Err(QError::NotRegularSemidistributor);
    }
    Ok(left_adjoint_unchecked(phi))
}

fn left_adjoint_unchecked(phi: &SemiDistributor) -> Option<AdjointPair> {
    let psi = candidate_unchecked(phi);
    adjoint_unchecked(phi, &psi).then(|| AdjointPair {
        left: phi.clone(),
        right: SemiDistributor::from_checked(phi.cod().clone(), phi.dom().clone(), psi),
    })
}

/// For each domain object, the codomain objects `b` of the same type with
/// `B(-, b) = Φ(-, a)` and `B(b, -) = Φ*(a, -)`, in scan order.
pub fn convergence_points(pair: &AdjointPair) -> Vec<Vec<usize>> {
    let (dom, cod) = (pair.left.dom(), pair.left.cod());
    (0..dom.n_objects())
        .map(|a| {
            (0..cod.n_objects())
                .filter(|&b| {
                    cod.type_of(b) == dom.type_of(a)
                        && (0..cod.n_objects()).all(|y| {
                            cod.hom(y, b) == pair.left.get(y, a) && cod.hom(b, y) == pair.right.get(a, y)
                        })
                })
                .collect()
        })
        .collect()
}

/// A semifunctor `F` with `Φ = B(-,F-)` and `Φ* = B(F-,-)`, the first in scan order.
///
/// Every other such map is checked to be equivalent to the returned one.
pub fn converges(pair: &AdjointPair) -> Result<Option<ObjectMap>> {
    if !adjoint_unchecked(&pair.left, pair.right.mat()) {
        return Err(QError::NotLeftAdjoint);
    }
    let points = convergence_points(pair);
    if points.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let (dom, cod) = (pair.left.dom(), pair.left.cod());
    let f = ObjectMap::new(dom.clone(), cod.clone(), points.iter().map(|p| p[0]).collect())?;
    if !check_object_map(&f).semifunctor {
        return Ok(None);
    }
    for alt in points.iter().enumerate().flat_map(|(a, ps)| ps[1..].iter().map(move |&b| (a, b))) {
        let mut map = f.map().to_vec();
        map[alt.0] = alt.1;
        let g = ObjectMap::new(dom.clone(), cod.clone(), map)?;
        debug_assert!(semifunctors_equivalent(&f, &g)?);
    }
    Ok(Some(f))
}

/// Which one-object probe domains a completeness test or completion uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProbeKind {
    /// `*_e` for every idempotent `e` of the base.
    Idempotent,
    /// `*_X` with identity hom, for every base object `X`.
    Identity,
}

/// A left adjoint `φ: *_e ⇸ B` together with its right adjoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Probe {
    pub idempotent: Arrow,
    /// `φ(y): dom(e) -> t(y)` for each object `y` of `B`.
    pub phi: Vec<Elem>,
    /// `φ*(y): t(y) -> dom(e)`.
    pub phi_star: Vec<Elem>,
}

/// Outcome of a completeness test: every left adjoint probe that fails to converge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completeness {
    pub complete: bool,
    pub non_converging: Vec<Probe>,
    pub probes_checked: usize,
}

impl Completeness {
    /// The first non-converging probe in scan order.
    pub fn witness(&self) -> Option<&Probe> {
        self.non_converging.first()
    }
}

fn probe_domains(b: &EnrichedStructure, kind: ProbeKind) -> Result<Vec<Arrow>> {
    let q = b.base();
    let mut out = Vec::new();
    for x in q.objects() {
        match kind {
            ProbeKind::Identity => out.push(Arrow::endo(x, q.identity(x))),
            ProbeKind::Idempotent => out.extend(q.idempotents(x)?),
        }
    }
    Ok(out)
}

/// Every left adjoint probe `*_e ⇸ B`: base objects in id order, idempotents by
/// element id, vectors in lexicographic order.
pub fn left_adjoint_probes(b: &Arc<EnrichedStructure>, kind: ProbeKind) -> Result<Vec<Probe>> {
    probes_metered(b, kind, &mut Meter::unlimited()).map(|r| r.expect("unlimited meter"))
}

fn probes_metered(
    b: &Arc<EnrichedStructure>,
    kind: ProbeKind,
    meter: &mut Meter,
) -> Result<std::result::Result<Vec<Probe>, Exhausted>> {
    let mut out = Vec::new();
    for e in probe_domains(b, kind)? {
        let star = Arc::new(EnrichedStructure::star(b.base().clone(), e)?);
        let run = for_each_semidistributor(&star, b, true, meter, |phi| {
            if let Some(pair) = left_adjoint_unchecked(&phi) {
                out.push(Probe {
                    idempotent: e,
                    phi: phi.mat().column(0),
                    phi_star: pair.right.mat().row(0),
                });
            }
            ControlFlow::Continue(())
        });
        if let Err(ex) = run {
            return Ok(Err(ex));
        }
    }
    Ok(Ok(out))
}

/// The object a probe converges to: same type as `dom(e)`, `e <= B(b,b)`,
/// `B(-,b) = φ` and `B(b,-) = φ*`; the first such in scan order.
pub fn probe_convergence_point(b: &EnrichedStructure, p: &Probe) -> Option<usize> {
    let q = b.base();
    let x = p.idempotent.src;
    (0..b.n_objects()).find(|&y0| {
        b.type_of(y0) == x
            && q.hom(x, x).le(p.idempotent.elem, b.hom(y0, y0))
            && (0..b.n_objects()).all(|y| b.hom(y, y0) == p.phi[y] && b.hom(y0, y) == p.phi_star[y])
    })
}

fn completeness(b: &Arc<EnrichedStructure>, kind: ProbeKind) -> Result<Completeness> {
    let probes = left_adjoint_probes(b, kind)?;
    let non_converging: Vec<Probe> = probes
        .iter()
        .filter(|p| probe_convergence_point(b, p).is_none())
        .cloned()
        .collect();
    Ok(Completeness {
        complete: non_converging.is_empty(),
        non_converging,
        probes_checked: probes.len(),
    })
}

/// Whether every left adjoint probe `*_e ⇸ B` (idempotent `e`) converges.
pub fn is_cauchy_complete_trs(b: &Arc<EnrichedStructure>) -> Result<Completeness> {
    b.require_totally_regular()?;
    completeness(b, ProbeKind::Idempotent)
}

/// Whether every left adjoint distributor `*_X ⇸ B` (identity hom) converges.
pub fn is_cauchy_complete_cat(b: &Arc<EnrichedStructure>) -> Result<Completeness> {
    b.require_category()?;
    completeness(b, ProbeKind::Identity)
}

/// Completeness read off its definition: every left adjoint regular
/// semidistributor from each of the given domains converges, where convergence
/// is decided by scanning all type-preserving object maps.
///
/// Returns the first failing `(domain index, Φ)`.
pub fn completeness_by_definition(
    b: &Arc<EnrichedStructure>,
    domains: &[Arc<EnrichedStructure>],
) -> Result<Option<(usize, SemiDistributor)>> {
    b.require_totally_regular()?;
    for (i, a) in domains.iter().enumerate() {
        a.require_totally_regular()?;
        let maps = object_maps(a, b);
        for phi in regular_semidistributors(a, b) {
            let Some(pair) = left_adjoint_unchecked(&phi) else {
                continue;
            };
            let converges = maps.iter().any(|f| {
                check_object_map(f).semifunctor
                    && f.represented() == *pair.left.mat()
                    && f.corepresented() == *pair.right.mat()
            });
            if !converges {
                return Ok(Some((i, phi)));
            }
        }
    }
    Ok(None)
}

/// A completion together with the embedding of the original structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionResult {
    pub completed: Arc<EnrichedStructure>,
    pub embed: ObjectMap,
    pub object_table: Vec<Probe>,
}

/// The structure whose objects are the given probes and whose homs are `ψ* ⊗ φ`.
fn probe_structure(b: &Arc<EnrichedStructure>, probes: &[Probe]) -> Result<Arc<EnrichedStructure>> {
    let q = b.base();
    let types: Vec<ObjId> = probes.iter().map(|p| p.idempotent.src).collect();
    let obs = Arc::new(TypedSet::numbered("phi", types));
    let hom = QMatrix::from_fn(obs.clone(), obs, |j, i| {
        let (psi, phi) = (&probes[j], &probes[i]);
        let (ti, tj) = (phi.idempotent.src, psi.idempotent.src);
        let lat = q.hom(ti, tj);
        (0..b.n_objects()).fold(lat.bottom(), |acc, y| {
            lat.join2(acc, q.comp(ti, b.type_of(y), tj, psi.phi_star[y], phi.phi[y]))
        })
    });
    Ok(Arc::new(EnrichedStructure::from_checked(q.clone(), hom)))
}

fn complete_with(b: &Arc<EnrichedStructure>, kind: ProbeKind) -> Result<CompletionResult> {
    let probes = left_adjoint_probes(b, kind)?;
    let completed = probe_structure(b, &probes)?;
    let q = b.base();
    let map = (0..b.n_objects())
        .map(|y0| {
            let t = b.type_of(y0);
            let e = match kind {
                ProbeKind::Idempotent => b.hom(y0, y0),
                ProbeKind::Identity => q.identity(t),
            };
            probes
                .iter()
                .position(|p| {
                    p.idempotent == Arrow::endo(t, e) && (0..b.n_objects()).all(|y| p.phi[y] == b.hom(y, y0))
                })
                .expect("representable probes are left adjoints")
        })
        .collect();
    let embed = ObjectMap::new(b.clone(), completed.clone(), map)?;
    Ok(CompletionResult {
        completed,
        embed,
        object_table: probes,
    })
}

/// The completion whose objects are all left adjoints `*_e ⇸ B`, with homs `ψ* ⊗ φ`.
pub fn cauchy_complete_trs(b: &Arc<EnrichedStructure>) -> Result<CompletionResult> {
    b.require_totally_regular()?;
    complete_with(b, ProbeKind::Idempotent)
}

/// The completion whose objects are all left adjoints `*_X ⇸ B` out of identity-hom domains.
pub fn cauchy_complete_cat(b: &Arc<EnrichedStructure>) -> Result<CompletionResult> {
    b.require_category()?;
    complete_with(b, ProbeKind::Identity)
}

/// The same recipe run on a structure that is only required to be regular.
///
/// No embedding is returned: for a structure that is not totally regular its
/// objects need not be among the probes.
pub fn complete_regular(b: &Arc<EnrichedStructure>) -> Result<(Arc<EnrichedStructure>, Vec<Probe>)> {
    if !b.is_regular() {
        return Err(QError::NotRegular);
    }
    let probes = left_adjoint_probes(b, ProbeKind::Idempotent)?;
    Ok((probe_structure(b, &probes)?, probes))
}

/// One representative per isomorphism class: two objects are identified when
/// they have the same type and identical rows and columns. Returns the full
/// subgraph on the first member of each class and the representative of every object.
pub fn skeleton(s: &Arc<EnrichedStructure>) -> Result<(Arc<EnrichedStructure>, ObjectMap, Vec<usize>)> {
    let n = s.n_objects();
    let same = |a: usize, b: usize| {
        s.type_of(a) == s.type_of(b) && (0..n).all(|y| s.hom(y, a) == s.hom(y, b) && s.hom(a, y) == s.hom(b, y))
    };
    let mut reps: Vec<usize> = Vec::new();
    let mut class_of = Vec::with_capacity(n);
    for a in 0..n {
        match reps.iter().position(|&r| same(r, a)) {
            Some(i) => class_of.push(i),
            None => {
                class_of.push(reps.len());
                reps.push(a);
            }
        }
    }
    let (sub, incl) = crate::structure::full_subgraph(s, &reps)?;
    Ok((sub, incl, class_of))
}

/// Checks of the embedding `k: B -> B_cc`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct YonedaReport {
    /// `B_cc(k b', k b) = B(b', b)`.
    pub fully_faithful: bool,
    /// `B_cc(k b, φ) = φ(b)`.
    pub represents_columns: bool,
    /// `B_cc(φ, k b) = φ*(b)`.
    pub represents_rows: bool,
    /// `B_cc(-, k-)` and `B_cc(k-, -)` are inverse to each other.
    pub inverse_pair: bool,
}

impl YonedaReport {
    pub fn all(&self) -> bool {
        self.fully_faithful && self.represents_columns && self.represents_rows && self.inverse_pair
    }
}

pub fn yoneda_check(b: &Arc<EnrichedStructure>, c: &CompletionResult) -> Result<YonedaReport> {
    if c.embed.dom() != b {
        return Err(QError::ShapeMismatch("completion belongs to a different structure".into()));
    }
    let (cc, k) = (&c.completed, c.embed.map());
    let n = b.n_objects();
    let fully_faithful = (0..n).all(|y| (0..n).all(|x| cc.hom(k[y], k[x]) == b.hom(y, x)));
    let mut represents_columns = true;
    let mut represents_rows = true;
    for (i, p) in c.object_table.iter().enumerate() {
        for y in 0..n {
            represents_columns &= cc.hom(k[y], i) == p.phi[y];
            represents_rows &= cc.hom(i, k[y]) == p.phi_star[y];
        }
    }
    let (left, right) = crate::structure::induced_pair(&c.embed)?;
    let inverse_pair = is_inverse_pair(&left, &right)?;
    Ok(YonedaReport {
        fully_faithful,
        represents_columns,
        represents_rows,
        inverse_pair,
    })
}

/// The extension `G: A_cc -> B` of a regular semifunctor `F: A -> B` into a
/// Cauchy complete structure: `G φ` is the point `B(-,F-) ⊗ φ` converges to.
pub fn factor_through_completion(f: &ObjectMap, a_cc: &CompletionResult) -> Result<ObjectMap> {
    let (a, b) = (f.dom(), f.cod());
    a.require_totally_regular()?;
    b.require_totally_regular()?;
    if a_cc.embed.dom() != a {
        return Err(QError::ShapeMismatch("completion belongs to a different structure".into()));
    }
    if !check_object_map(f).regular_semifunctor {
        return Err(QError::NotRegularSemifunctor);
    }
    if !is_cauchy_complete_trs(b)?.complete {
        return Err(QError::NotCauchyComplete);
    }
    let q = b.base();
    let mut map = Vec::with_capacity(a_cc.object_table.len());
    for p in &a_cc.object_table {
        let x = p.idempotent.src;
        // B(-,F-) ⊗ φ and its right adjoint φ* ⊗ B(F-,-)
        let phi: Vec<Elem> = (0..b.n_objects())
            .map(|y| {
                let lat = q.hom(x, b.type_of(y));
                (0..a.n_objects()).fold(lat.bottom(), |acc, i| {
                    lat.join2(acc, q.comp(x, a.type_of(i), b.type_of(y), b.hom(y, f.apply(i)), p.phi[i]))
                })
            })
            .collect();
        let phi_star: Vec<Elem> = (0..b.n_objects())
            .map(|y| {
                let lat = q.hom(b.type_of(y), x);
                (0..a.n_objects()).fold(lat.bottom(), |acc, i| {
                    lat.join2(acc, q.comp(b.type_of(y), a.type_of(i), x, p.phi_star[i], b.hom(f.apply(i), y)))
                })
            })
            .collect();
        let image = Probe {
            idempotent: p.idempotent,
            phi,
            phi_star,
        };
        let point = probe_convergence_point(b, &image).ok_or(QError::NotCauchyComplete)?;
        map.push(point);
    }
    ObjectMap::new(a_cc.completed.clone(), b.clone(), map)
}

/// Searches for a regular semifunctor `H: A_cc -> B` with `H ∘ k ≅ F` that is
/// not equivalent to `g`. Values are drawn from one object per isomorphism class
/// of `B`, which loses nothing since isomorphic values give equivalent maps.
pub fn search_other_factorization(
    f: &ObjectMap,
    a_cc: &CompletionResult,
    g: &ObjectMap,
    budget: &Budget,
) -> Result<SearchOutcome<ObjectMap>> {
    let b = f.cod();
    let cc = &a_cc.completed;
    let (_, incl, _) = skeleton(b)?;
    let reps: Vec<usize> = incl.map().to_vec();
    let q = b.base();
    let choices: Vec<Vec<usize>> = (0..cc.n_objects())
        .map(|i| {
            let e = cc.hom(i, i);
            let ti = cc.type_of(i);
            reps.iter()
                .copied()
                .filter(|&y| {
                    // type, local regularity, and the endo-hom inequality
                    b.type_of(y) == ti
                        && q.hom(ti, ti).le(e, b.hom(y, y))
                        && (0..b.n_objects()).all(|z| {
                            let tz = b.type_of(z);
                            q.comp(ti, ti, tz, b.hom(z, y), e) == b.hom(z, y)
                                && q.comp(tz, ti, ti, e, b.hom(y, z)) == b.hom(y, z)
                        })
                })
                .collect()
        })
        .collect();
    let mut meter = budget.meter();
    let mut map = vec![0; cc.n_objects()];
    let mut found = None;
    let run = backtrack_maps(cc, b, &choices, 0, &mut map, &mut meter, &mut |m| {
        let h = ObjectMap::new(cc.clone(), b.clone(), m.to_vec()).expect("typed");
        let commutes = a_cc.embed.then(&h).and_then(|hk| semifunctors_equivalent(&hk, f)).unwrap_or(false);
        if commutes && !semifunctors_equivalent(&h, g).unwrap_or(true) {
            found = Some(h);
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    Ok(match (run, found) {
        (_, Some(h)) => SearchOutcome::Found(h),
        (Err(Exhausted), None) => SearchOutcome::BudgetExceeded,
        (Ok(_), None) => SearchOutcome::NotFound,
    })
}

/// Depth-first enumeration of object maps with the semifunctor inequality
/// checked against every earlier assignment.
fn backtrack_maps(
    a: &EnrichedStructure,
    b: &EnrichedStructure,
    choices: &[Vec<usize>],
    k: usize,
    map: &mut Vec<usize>,
    meter: &mut Meter,
    visit: &mut impl FnMut(&[usize]) -> ControlFlow<()>,
) -> std::result::Result<ControlFlow<()>, Exhausted> {
    if k == map.len() {
        return Ok(visit(map));
    }
    let q = a.base();
    for &y in &choices[k] {
        meter.tick()?;
        map[k] = y;
        let tk = a.type_of(k);
        let ok = (0..=k).all(|j| {
            let tj = a.type_of(j);
            q.hom(tk, tj).le(a.hom(j, k), b.hom(map[j], y)) && q.hom(tj, tk).le(a.hom(k, j), b.hom(y, map[j]))
        });
        if ok && backtrack_maps(a, b, choices, k + 1, map, meter, visit)?.is_break() {
            return Ok(ControlFlow::Break(()));
        }
    }
    Ok(ControlFlow::Continue(()))
}

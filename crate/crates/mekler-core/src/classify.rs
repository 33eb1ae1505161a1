//! Element classification in `M(C)`: the equivalence relations `~` and `≈`,
//! the types `1^ν / p−1 / p / 1^ι`, handles, the predicates `A_{n,m}` with
//! their supports, quotient graphs, graph recovery, type censuses and the
//! inp-pattern check.
//!
//! Both equivalences factor through the projection `π : G → V = G/Z`, so all
//! computations here work on images. Two elements are `~`-equivalent when
//! their centralizers agree, i.e. when the kernels of `β(π(·), -)` coincide;
//! they are `≈`-equivalent when one is a power of the other times a central
//! element, i.e. when their images span the same line (or both vanish).
//!
//! The structural classifier reads the type off the support `U` of the image
//! and the set of vertices commuting with all of `U`: a singleton support is
//! type `1^ν`; two commuting vertices mean type `p−1`; a unique commuting
//! vertex means type `p` with that vertex's class as handle; no commuting
//! vertex means type `1^ι`. In a nice graph (no triangles or squares) these
//! are the only possibilities. The brute-force `≈`-class counting in
//! [`crate::oracle`] is the ground truth the structural path is tested
//! against.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::fp::is_zero_vec;
use crate::graph::{graph_isomorphic, Graph};
use crate::group::{MeklerElement, MeklerGroup};
use crate::{Error, Partial, Result};

// ---------------------------------------------------------------------------
// Sim classes and the two equivalences
// ---------------------------------------------------------------------------

/// Canonical identifier of a `~`-class of non-central elements: the
/// lexicographically least image among the class members after scaling the
/// first nonzero coordinate to 1. Stable across runs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimClass(pub Vec<u64>);

impl SimClass {
    pub fn image(&self) -> &[u64] {
        &self.0
    }
}

/// `g ~ h`: equal centralizers, decided by comparing the kernels of
/// `β(π(g), ·)` and `β(π(h), ·)` as subspaces.
pub fn sim_equiv(group: &MeklerGroup, g: &MeklerElement, h: &MeklerElement) -> bool {
    group.centralizer_kernel_canonical(g.gen()) == group.centralizer_kernel_canonical(h.gen())
}

/// `g ≈ h`: `h = g^α · c` for some `α ∈ {1, …, p−1}` and central `c`;
/// equivalently the images of `g` and `h` are nonzero scalar multiples of
/// one another, or both vanish.
///
/// The exponent `α = 0` is excluded: admitting it would relate every central
/// element to every `g`, destroying symmetry and the refinement of `~`.
pub fn approx_equiv(group: &MeklerGroup, g: &MeklerElement, h: &MeklerElement) -> bool {
    approx_equiv_images(group, g.gen(), h.gen())
}

pub fn approx_equiv_images(group: &MeklerGroup, v: &[u64], w: &[u64]) -> bool {
    match (is_zero_vec(v), is_zero_vec(w)) {
        (true, true) => true,
        (true, false) | (false, true) => false,
        (false, false) => {
            let f = group.field();
            (1..group.p()).any(|c| f.vec_scale(c, v) == w)
        }
    }
}

// ---------------------------------------------------------------------------
// Element types
// ---------------------------------------------------------------------------

/// Classification of one element. The tags are mutually exclusive and
/// exhaustive on `M(C)` for nice `C`: every non-central element is of type
/// `1^ν`, `p−1`, `p` (with a unique handle) or `1^ι`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ElementType {
    Central,
    OneNu,
    PMinusOne,
    TypeP { handle: SimClass },
    OneIota,
}

/// Bare tag, for counting and reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TypeTag {
    Central,
    OneNu,
    PMinusOne,
    TypeP,
    OneIota,
}

/// Whether a type is isolated (`ι`) or non-isolated (`ν`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Isolation {
    Iota,
    Nu,
}

impl ElementType {
    pub fn tag(&self) -> TypeTag {
        match self {
            ElementType::Central => TypeTag::Central,
            ElementType::OneNu => TypeTag::OneNu,
            ElementType::PMinusOne => TypeTag::PMinusOne,
            ElementType::TypeP { .. } => TypeTag::TypeP,
            ElementType::OneIota => TypeTag::OneIota,
        }
    }

    /// The number `q` of `≈`-classes in the `~`-class, for non-central
    /// elements.
    pub fn q(&self, p: u64) -> Option<u64> {
        match self {
            ElementType::Central => None,
            ElementType::OneNu | ElementType::OneIota => Some(1),
            ElementType::PMinusOne => Some(p - 1),
            ElementType::TypeP { .. } => Some(p),
        }
    }

    pub fn isolation(&self) -> Option<Isolation> {
        match self {
            ElementType::Central => None,
            ElementType::OneIota => Some(Isolation::Iota),
            _ => Some(Isolation::Nu),
        }
    }
}

fn support_of(v: &[u64]) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, _)| i)
        .collect()
}

/// Vertices commuting with all of `support`: adjacent to every support
/// vertex other than themselves.
fn commuting_vertices(graph: &Graph, support: &[usize]) -> Vec<usize> {
    (0..graph.vertex_count())
        .filter(|&u| support.iter().all(|&s| s == u || graph.has_edge(u, s)))
        .collect()
}

/// Structural classification of an element by its image.
pub fn type_of(group: &MeklerGroup, g: &MeklerElement) -> Result<ElementType> {
    type_of_image(group, g.gen())
}

/// Structural classification of an image `v ∈ V`.
pub fn type_of_image(group: &MeklerGroup, v: &[u64]) -> Result<ElementType> {
    if is_zero_vec(v) {
        return Ok(ElementType::Central);
    }
    let support = support_of(v);
    if support.len() == 1 {
        return Ok(ElementType::OneNu);
    }
    let comm = commuting_vertices(group.graph(), &support);
    match comm.as_slice() {
        [] => Ok(ElementType::OneIota),
        [c] => Ok(ElementType::TypeP {
            handle: vertex_class(group, *c),
        }),
        [a, b] if support == [*a, *b] => Ok(ElementType::PMinusOne),
        other => Err(Error::Internal(format!(
            "support {support:?} commutes with {other:?}; the graph cannot be nice"
        ))),
    }
}

/// The `~`-class of the generator of vertex `c`.
pub fn vertex_class(group: &MeklerGroup, c: usize) -> SimClass {
    let mut image = vec![0u64; group.generator_count()];
    image[c] = 1;
    SimClass(image)
}

/// All images in the `~`-class of the non-central image `v`, computed
/// structurally from the type:
/// `1^ν` and `1^ι`: nonzero multiples of `v`; `p−1`: combinations of the two
/// support vertices with both coefficients nonzero; `p`: `α·v₀ + β·e_c` with
/// `α ≠ 0`, where `c` is the handle vertex and `v₀` is `v` with the `c`
/// coordinate cleared.
pub fn sim_class_members_image(group: &MeklerGroup, v: &[u64]) -> Result<Vec<Vec<u64>>> {
    let f = group.field();
    let p = group.p();
    let n = group.generator_count();
    let ty = type_of_image(group, v)?;
    let mut members = Vec::new();
    match ty {
        ElementType::Central => {
            return Err(Error::Input("central elements have no sim class id".into()))
        }
        ElementType::OneNu | ElementType::OneIota => {
            for a in 1..p {
                members.push(f.vec_scale(a, v));
            }
        }
        ElementType::PMinusOne => {
            let support = support_of(v);
            let (i, j) = (support[0], support[1]);
            for a in 1..p {
                for b in 1..p {
                    let mut w = vec![0u64; n];
                    w[i] = a;
                    w[j] = b;
                    members.push(w);
                }
            }
        }
        ElementType::TypeP { handle } => {
            let c = support_of(handle.image())[0];
            let mut v0 = v.to_vec();
            v0[c] = 0;
            for a in 1..p {
                for b in 0..p {
                    let mut w = f.vec_scale(a, &v0);
                    w[c] = b;
                    members.push(w);
                }
            }
        }
    }
    Ok(members)
}

/// Canonical `~`-class identifier of a non-central element.
pub fn sim_class_of(group: &MeklerGroup, g: &MeklerElement) -> Result<SimClass> {
    sim_class_of_image(group, g.gen())
}

pub fn sim_class_of_image(group: &MeklerGroup, v: &[u64]) -> Result<SimClass> {
    let f = group.field();
    let rep = sim_class_members_image(group, v)?
        .into_iter()
        .map(|w| f.normalize_line(&w).expect("class members are nonzero"))
        .min()
        .expect("sim classes are nonempty");
    Ok(SimClass(rep))
}

/// The handle of a type-`p` element: the unique `~`-class of type-`1^ν`
/// elements commuting with it.
pub fn handle(group: &MeklerGroup, g: &MeklerElement) -> Result<SimClass> {
    match type_of(group, g)? {
        ElementType::TypeP { handle } => Ok(handle),
        other => Err(Error::NotTypeP {
            actual: format!("{:?}", other.tag()),
        }),
    }
}

// ---------------------------------------------------------------------------
// A_{n,m} and supports
// ---------------------------------------------------------------------------

/// One decomposition witnessing membership in `A_{n,m}`: at most `n` images
/// of type-`1^ν` factors on pairwise distinct vertices, and at most `m`
/// images of type-`p` factors with pairwise distinct handles, none of which
/// is a product of `n` type-`1^ν` elements (support size > `n`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub one_nu_images: Vec<Vec<u64>>,
    pub type_p_images: Vec<Vec<u64>>,
}

/// The support data of an element relative to `A_{n,m}`: the `~`-classes of
/// its type-`1^ν` factors and the handles of its type-`p` factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportRecord {
    pub n: usize,
    pub m: usize,
    pub s: BTreeSet<SimClass>,
    pub s_handles: BTreeSet<SimClass>,
    pub minimal: bool,
}

/// All images of type-`p` elements, in lexicographic order. Requires
/// enumerating `V`, so it is subject to the enumeration cap.
fn type_p_images(group: &MeklerGroup) -> Result<Vec<(Vec<u64>, SimClass)>> {
    let mut out = Vec::new();
    for v in group.enumerate_images()? {
        if let ElementType::TypeP { handle } = type_of_image(group, &v)? {
            out.push((v, handle));
        }
    }
    Ok(out)
}

fn decompositions_image(
    group: &MeklerGroup,
    v: &[u64],
    n: usize,
    m: usize,
    first_only: bool,
) -> Result<Vec<Decomposition>> {
    let f = group.field();
    let mut found = Vec::new();

    let remainder_decomposition = |rest: &[u64]| -> Option<Vec<Vec<u64>>> {
        let support = support_of(rest);
        if support.len() > n {
            return None;
        }
        Some(
            support
                .iter()
                .map(|&a| {
                    let mut img = vec![0u64; rest.len()];
                    img[a] = rest[a];
                    img
                })
                .collect(),
        )
    };

    // m' = 0 first: the element is a product of at most n type-1^ν factors
    if let Some(one_nu) = remainder_decomposition(v) {
        found.push(Decomposition {
            one_nu_images: one_nu,
            type_p_images: Vec::new(),
        });
        if first_only {
            return Ok(found);
        }
    }
    if m == 0 {
        return Ok(found);
    }

    // candidate type-p factors must not be products of n type-1^ν elements
    let candidates: Vec<(Vec<u64>, SimClass)> = type_p_images(group)?
        .into_iter()
        .filter(|(img, _)| support_of(img).len() > n)
        .collect();

    // depth-first over subsets of candidates with pairwise distinct handles
    let mut chosen: Vec<usize> = Vec::new();
    let mut stack_go = StackSearch {
        f,
        v,
        candidates: &candidates,
        m,
        remainder: &remainder_decomposition,
        found: &mut found,
        first_only,
    };
    stack_go.run(0, &mut chosen);
    Ok(found)
}

type RemainderFn<'a> = &'a dyn Fn(&[u64]) -> Option<Vec<Vec<u64>>>;

struct StackSearch<'a> {
    f: &'a crate::fp::PrimeField,
    v: &'a [u64],
    candidates: &'a [(Vec<u64>, SimClass)],
    m: usize,
    remainder: RemainderFn<'a>,
    found: &'a mut Vec<Decomposition>,
    first_only: bool,
}

impl StackSearch<'_> {
    fn run(&mut self, start: usize, chosen: &mut Vec<usize>) {
        if self.first_only && !self.found.is_empty() {
            return;
        }
        if !chosen.is_empty() {
            let mut rest = self.v.to_vec();
            for &idx in chosen.iter() {
                rest = self.f.vec_sub(&rest, &self.candidates[idx].0);
            }
            if let Some(one_nu) = (self.remainder)(&rest) {
                self.found.push(Decomposition {
                    one_nu_images: one_nu,
                    type_p_images: chosen
                        .iter()
                        .map(|&i| self.candidates[i].0.clone())
                        .collect(),
                });
                if self.first_only {
                    return;
                }
            }
        }
        if chosen.len() == self.m {
            return;
        }
        for next in start..self.candidates.len() {
            let clash = chosen
                .iter()
                .any(|&i| self.candidates[i].1 == self.candidates[next].1);
            if clash {
                continue;
            }
            chosen.push(next);
            self.run(next + 1, chosen);
            chosen.pop();
        }
    }
}

/// Membership in `A_{n,m}`, by bounded search over decompositions of the
/// image into type-`1^ν` and type-`p` images.
pub fn in_a(group: &MeklerGroup, g: &MeklerElement, n: usize, m: usize) -> Result<bool> {
    in_a_image(group, g.gen(), n, m)
}

pub fn in_a_image(group: &MeklerGroup, v: &[u64], n: usize, m: usize) -> Result<bool> {
    Ok(!decompositions_image(group, v, n, m, true)?.is_empty())
}

/// Every `A_{n,m}` decomposition of the image of `g` found by the bounded
/// search, in deterministic order. Exposed for the witness-independence
/// tests on supports.
pub fn all_decompositions(
    group: &MeklerGroup,
    g: &MeklerElement,
    n: usize,
    m: usize,
) -> Result<Vec<Decomposition>> {
    decompositions_image(group, g.gen(), n, m, false)
}

/// The reverse-lexicographically minimal `(n, m)` with `g ∈ A_{n,m}`,
/// comparing `m` first and then `n`. In the finite group every element is a
/// product of generators, so the scan always terminates in the `m = 0` pass
/// with `n` the support size of the image.
pub fn minimal_a_index(group: &MeklerGroup, g: &MeklerElement) -> (usize, usize) {
    let n_bound = group.generator_count();
    for m in 0..=n_bound {
        for n in 0..=n_bound {
            if let Ok(true) = in_a_image(group, g.gen(), n, m) {
                return (n, m);
            }
        }
    }
    unreachable!("every image is a sum of at most |V| vertex images");
}

/// The support record `(S_{n,m}, S'_{n,m})` of `g`, from the first
/// decomposition in search order; the undetermined marker when
/// `g ∉ A_{n,m}`.
pub fn support(
    group: &MeklerGroup,
    g: &MeklerElement,
    n: usize,
    m: usize,
) -> Result<Partial<SupportRecord>> {
    let decs = decompositions_image(group, g.gen(), n, m, true)?;
    let Some(dec) = decs.into_iter().next() else {
        return Ok(Partial::Undetermined);
    };
    Ok(Partial::Defined(support_from_decomposition(
        group, g, &dec, n, m,
    )?))
}

/// The `(S, S')` data a single decomposition yields.
pub fn support_from_decomposition(
    group: &MeklerGroup,
    g: &MeklerElement,
    dec: &Decomposition,
    n: usize,
    m: usize,
) -> Result<SupportRecord> {
    let mut s = BTreeSet::new();
    for img in &dec.one_nu_images {
        s.insert(sim_class_of_image(group, img)?);
    }
    let mut s_handles = BTreeSet::new();
    for img in &dec.type_p_images {
        match type_of_image(group, img)? {
            ElementType::TypeP { handle } => {
                s_handles.insert(handle);
            }
            _ => {
                return Err(Error::Internal(
                    "decomposition contains a non-type-p factor".into(),
                ))
            }
        }
    }
    let minimal = minimal_a_index(group, g) == (n, m);
    Ok(SupportRecord {
        n,
        m,
        s,
        s_handles,
        minimal,
    })
}

// ---------------------------------------------------------------------------
// Quotient graphs and recovery
// ---------------------------------------------------------------------------

/// The graph `Γ(X)`: `~`-classes of the given non-central elements, with an
/// edge between two distinct classes when their members commute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientGraph {
    pub classes: Vec<SimClass>,
    pub graph: Graph,
}

pub fn gamma_graph(group: &MeklerGroup, elements: &[MeklerElement]) -> Result<QuotientGraph> {
    let mut classes = BTreeSet::new();
    for g in elements {
        if group.is_central(g) {
            return Err(Error::Input(
                "central elements are excluded from quotient graphs".into(),
            ));
        }
        classes.insert(sim_class_of(group, g)?);
    }
    let classes: Vec<SimClass> = classes.into_iter().collect();
    let mut edges = Vec::new();
    for a in 0..classes.len() {
        for b in (a + 1)..classes.len() {
            // commutation is well defined on classes, so test representatives
            let beta = group.beta_image(classes[a].image(), classes[b].image());
            if is_zero_vec(&beta) {
                edges.push((a, b));
            }
        }
    }
    let graph = Graph::new(classes.len(), edges)?;
    Ok(QuotientGraph { classes, graph })
}

/// The graph `Γ(E^ν)` recovered from the group, with the verified bijection
/// back to the input graph's vertices.
#[derive(Debug, Clone)]
pub struct RecoveredGraph {
    /// `Γ(E^ν)`: one vertex per generator `~`-class, edges by commutation.
    pub graph: Graph,
    /// `classes[i]` is the class `[x_i]_~` sitting at recovered vertex `i`.
    pub classes: Vec<SimClass>,
    /// Isomorphism from the recovered graph onto the input graph.
    pub isomorphism: Vec<usize>,
}

/// Recovers the defining graph as `Γ(E^ν)`, structurally: the `~`-classes of
/// type-`1^ν` elements are exactly the generator classes, and commutation
/// between them reproduces the edges. No enumeration of the group is needed,
/// so this works at any graph size. The result is verified isomorphic to the
/// input graph; a failure would be an internal consistency error.
pub fn recover_graph(group: &MeklerGroup) -> Result<RecoveredGraph> {
    let n = group.generator_count();
    let mut classes = Vec::with_capacity(n);
    for i in 0..n {
        let gen = group.generator(i);
        match type_of(group, &gen)? {
            ElementType::OneNu => {}
            other => {
                return Err(Error::Internal(format!(
                    "generator {i} classifies as {:?}, not 1^ν",
                    other.tag()
                )))
            }
        }
        classes.push(sim_class_of(group, &gen)?);
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let beta = group.beta_image(classes[i].image(), classes[j].image());
            if is_zero_vec(&beta) {
                edges.push((i, j));
            }
        }
    }
    let graph = Graph::new(n, edges)?;
    let isomorphism = graph_isomorphic(&graph, group.graph()).ok_or_else(|| {
        Error::Internal("recovered graph is not isomorphic to the input graph".into())
    })?;
    Ok(RecoveredGraph {
        graph,
        classes,
        isomorphism,
    })
}

/// Outcome of the quotient-cover check: the graph `Γ` over the `~`-classes
/// of all elements of types `1^ν`, `p` and `1^ι`, the positions of the
/// vertex classes inside it, and the cover report of `Γ` over them.
#[derive(Debug, Clone)]
pub struct GammaCoverOutcome {
    pub quotient: QuotientGraph,
    /// Indices of the `E^ν` (vertex) classes inside `quotient.classes`.
    pub core_indices: Vec<usize>,
    pub report: crate::graph::CoverReport,
}

/// Caps the quotient size of [`gamma_cover_check`]; the edge relation is
/// quadratic in the class count.
const MAX_COVER_CLASSES: usize = 5000;

/// Builds `Γ` over every `~`-class of type `1^ν`, `p` or `1^ι` and checks
/// that it covers the vertex classes: each type-`p` class must be pendant on
/// its handle (a vertex class of degree ≥ `threshold` in the core) and each
/// type-`1^ι` class must be isolated.
pub fn gamma_cover_check(group: &MeklerGroup, threshold: usize) -> Result<GammaCoverOutcome> {
    let mut classes: BTreeSet<SimClass> = BTreeSet::new();
    for v in group.enumerate_images()? {
        match type_of_image(group, &v)? {
            ElementType::OneNu | ElementType::TypeP { .. } | ElementType::OneIota => {
                classes.insert(sim_class_of_image(group, &v)?);
            }
            _ => {}
        }
    }
    if classes.len() > MAX_COVER_CLASSES {
        return Err(Error::BoundExceeded(format!(
            "{} classes is above the quotient-cover bound of {MAX_COVER_CLASSES}",
            classes.len()
        )));
    }
    let classes: Vec<SimClass> = classes.into_iter().collect();
    let mut edges = Vec::new();
    for a in 0..classes.len() {
        for b in (a + 1)..classes.len() {
            if is_zero_vec(&group.beta_image(classes[a].image(), classes[b].image())) {
                edges.push((a, b));
            }
        }
    }
    let graph = Graph::new(classes.len(), edges)?;
    let core_indices: Vec<usize> = (0..group.generator_count())
        .map(|v| {
            let class = vertex_class(group, v);
            classes
                .iter()
                .position(|c| *c == class)
                .ok_or_else(|| Error::Internal(format!("vertex class {v} missing from quotient")))
        })
        .collect::<Result<_>>()?;
    let report = crate::graph::is_cover(&graph, &core_indices, threshold)?;
    Ok(GammaCoverOutcome {
        quotient: QuotientGraph { classes, graph },
        core_indices,
        report,
    })
}

// ---------------------------------------------------------------------------
// Census
// ---------------------------------------------------------------------------

/// Exact element counts per type tag. The optional fields are absent when
/// the image space is too large to enumerate, in which case only the
/// structurally countable tags are filled in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCensus {
    pub central: u64,
    pub one_nu: u64,
    pub p_minus_one: Option<u64>,
    pub type_p: Option<u64>,
    pub one_iota: Option<u64>,
}

impl TypeCensus {
    pub fn is_complete(&self) -> bool {
        self.p_minus_one.is_some() && self.type_p.is_some() && self.one_iota.is_some()
    }

    pub fn total(&self) -> Option<u64> {
        self.central
            .checked_add(self.one_nu)?
            .checked_add(self.p_minus_one?)?
            .checked_add(self.type_p?)?
            .checked_add(self.one_iota?)
    }
}

/// Counts elements of each type by classifying every image and scaling by
/// the centre size `p^dim Z`. Falls back to the structural counts for
/// `Central` and `OneNu` when the image space exceeds the enumeration cap.
pub fn type_census(group: &MeklerGroup) -> Result<TypeCensus> {
    let p = group.p();
    let center: u64 = checked_pow(p, group.center_dim())?;
    let one_nu_images = group.generator_count() as u64 * (p - 1);
    let images = match group.enumerate_images() {
        Ok(iter) => iter,
        Err(Error::CapExceeded { .. }) => {
            return Ok(TypeCensus {
                central: center,
                one_nu: one_nu_images
                    .checked_mul(center)
                    .ok_or_else(census_overflow)?,
                p_minus_one: None,
                type_p: None,
                one_iota: None,
            })
        }
        Err(e) => return Err(e),
    };
    let mut counts: BTreeMap<TypeTag, u64> = BTreeMap::new();
    for v in images {
        let tag = type_of_image(group, &v)?.tag();
        *counts.entry(tag).or_insert(0) += 1;
    }
    let scaled = |tag: TypeTag| -> Result<u64> {
        counts
            .get(&tag)
            .copied()
            .unwrap_or(0)
            .checked_mul(center)
            .ok_or_else(census_overflow)
    };
    Ok(TypeCensus {
        central: center,
        one_nu: scaled(TypeTag::OneNu)?,
        p_minus_one: Some(scaled(TypeTag::PMinusOne)?),
        type_p: Some(scaled(TypeTag::TypeP)?),
        one_iota: Some(scaled(TypeTag::OneIota)?),
    })
}

fn census_overflow() -> Error {
    Error::BoundExceeded("census counts exceed u64".into())
}

fn checked_pow(base: u64, exp: usize) -> Result<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base).ok_or_else(census_overflow)?;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// inp-pattern check
// ---------------------------------------------------------------------------

/// Outcome of checking the support formula family
/// `A_{m,0}(π(x)) ∧ y ∈ S_{m,0}(x)` over an array of vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InpReport {
    pub m: usize,
    pub vertices: Vec<usize>,
    /// Every `m`-subset of the array is realized by some element.
    pub consistent: bool,
    /// The size at which the family becomes inconsistent: `m + 1`.
    pub inconsistent_at: usize,
    /// Exhaustive scan confirmed no element realizes `m + 1` array vertices.
    pub inconsistency_verified: bool,
    pub subsets_checked: u64,
    /// One witness element per realized `m`-subset, in text form.
    pub witnesses: Vec<(Vec<usize>, String)>,
}

/// Checks that the support formula family is `m`-consistent and
/// `(m+1)`-inconsistent on the given vertices: every `m`-subset is realized
/// by an element of `A_{m,0}` whose support contains it, while an exhaustive
/// scan over images finds no element of `A_{m,0}` whose support contains
/// `m + 1` distinct array vertices. The scan needs `p^|V|` image steps and
/// refuses when that exceeds the enumeration cap.
pub fn inp_pattern_check(group: &MeklerGroup, m: usize, vertices: &[usize]) -> Result<InpReport> {
    let n = group.generator_count();
    let distinct: BTreeSet<usize> = vertices.iter().copied().collect();
    if distinct.len() != vertices.len() {
        return Err(Error::Input("vertex array contains duplicates".into()));
    }
    if vertices.iter().any(|&v| v >= n) {
        return Err(Error::Input("vertex array out of range".into()));
    }
    if m == 0 || vertices.len() < m + 1 {
        return Err(Error::Input(format!(
            "need at least m+1 = {} distinct vertices, got {}",
            m + 1,
            vertices.len()
        )));
    }

    let mut witnesses = Vec::new();
    let mut consistent = true;
    let mut subsets_checked = 0u64;
    for subset in combinations(vertices, m) {
        subsets_checked += 1;
        // the product of the subset's generators realizes the subset
        let mut g = group.identity();
        for &v in &subset {
            g = group.multiply(&g, &group.generator(v))?;
        }
        let ok = in_a(group, &g, m, 0)?
            && match support(group, &g, m, 0)? {
                Partial::Defined(rec) => subset
                    .iter()
                    .all(|&v| rec.s.contains(&vertex_class(group, v))),
                Partial::Undetermined => false,
            };
        if ok {
            witnesses.push((subset, g.to_string()));
        } else {
            consistent = false;
        }
    }

    // exhaustive refutation at m+1: scan all images in A_{m,0}
    let over_subsets = combinations(vertices, m + 1);
    let mut inconsistency_verified = true;
    'scan: for v in group.enumerate_images()? {
        let sup = support_of(&v);
        if sup.len() > m {
            continue; // not in A_{m,0}
        }
        subsets_checked += 1;
        for subset in &over_subsets {
            if subset.iter().all(|x| sup.contains(x)) {
                inconsistency_verified = false;
                break 'scan;
            }
        }
    }

    Ok(InpReport {
        m,
        vertices: vertices.to_vec(),
        consistent,
        inconsistent_at: m + 1,
        inconsistency_verified,
        subsets_checked,
        witnesses,
    })
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(
        items: &[usize],
        k: usize,
        start: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..items.len() {
            current.push(items[i]);
            go(items, k, i + 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

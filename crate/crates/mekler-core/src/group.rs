//! The Mekler group `M(C)` of a nice graph `C` over an odd prime `p`, with
//! exact normal-form arithmetic.
//!
//! Every element has a unique normal form
//! `x_0^{a_0} ··· x_{n-1}^{a_{n-1}} · Π [x_i, x_j]^{c_{ij}}`,
//! where the commutator product runs over the non-edges `{i, j}` of `C` in
//! lexicographic order. An element is stored as the pair of coordinate
//! vectors `(gen, com)` of that normal form. The centre is exactly
//! `{gen = 0}`, which coincides with the derived subgroup, and
//! `|M(C)| = p^(|V| + #non-edges)`.
//!
//! Multiplication concatenates normal forms and collects letters of the
//! right factor leftward past the left factor's tail. With the convention
//! `[a, b] = a⁻¹b⁻¹ab` and `[x_i, x_j]` equal to the `{i, j}` basis vector
//! of the centre for a non-edge `i < j`, each swap of `x_j` (left word) past
//! `x_i` (right word, `i < j`) emits `[x_j, x_i] = -e_{ij}`, so the cocycle
//! is `κ(a, b) = -Σ_{i<j non-edge} a_j·b_i·e_{ij}`. The letter-by-letter
//! rewriting oracle in [`crate::oracle`] is the ground truth for this
//! formula.

use std::collections::HashMap;
use std::fmt;

use crate::fp::{is_zero_vec, PrimeField};
use crate::graph::{is_nice, Graph};
use crate::linalg;
use crate::{Error, Result};

/// Default cap on full element enumerations.
pub const DEFAULT_ENUMERATION_CAP: u128 = 100_000_000;

/// Immutable context for `M(C)`: the graph, the prime, and the non-edge
/// index underlying the commutator basis. Safe to share across threads.
#[derive(Debug, Clone)]
pub struct MeklerGroup {
    graph: Graph,
    field: PrimeField,
    nonedges: Vec<(usize, usize)>,
    nonedge_index: HashMap<(usize, usize), usize>,
    enumeration_cap: u128,
}

/// A group element in normal-form coordinates: generator exponents `gen`
/// (indexed by vertices) and commutator coordinates `com` (indexed by
/// non-edges). All entries lie in `0..p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MeklerElement {
    gen: Vec<u64>,
    com: Vec<u64>,
}

impl MeklerElement {
    pub fn gen(&self) -> &[u64] {
        &self.gen
    }

    pub fn com(&self) -> &[u64] {
        &self.com
    }
}

impl fmt::Display for MeklerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_vec = |v: &[u64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "gen=[{}];com=[{}]",
            fmt_vec(&self.gen),
            fmt_vec(&self.com)
        )
    }
}

/// `p^exponent`, kept in exponent form since the value often exceeds `u128`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupOrder {
    pub base: u64,
    pub exponent: usize,
}

impl GroupOrder {
    /// The numeric value when it fits in a `u128`.
    pub fn value(&self) -> Option<u128> {
        let mut acc: u128 = 1;
        for _ in 0..self.exponent {
            acc = acc.checked_mul(self.base as u128)?;
        }
        Some(acc)
    }
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{}^{} = {}", self.base, self.exponent, v),
            None => write!(f, "{}^{}", self.base, self.exponent),
        }
    }
}

impl MeklerGroup {
    /// Builds `M(C)` for a nice graph, rejecting non-nice graphs with the
    /// niceness witness and rejecting `p` that is not an odd prime.
    pub fn build(graph: Graph, p: u64) -> Result<Self> {
        let report = is_nice(&graph);
        if !report.verdict {
            return Err(Error::NotNice(
                report.violation.expect("failed check has witness"),
            ));
        }
        Self::build_unchecked(graph, p)
    }

    /// Builds the group without the niceness gate (for experiments). The
    /// arithmetic is well defined for any simple graph; the classification
    /// theory is only guaranteed for nice ones.
    pub fn build_unchecked(graph: Graph, p: u64) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let nonedges = graph.nonedges();
        let nonedge_index = nonedges
            .iter()
            .enumerate()
            .map(|(idx, &pair)| (pair, idx))
            .collect();
        Ok(MeklerGroup {
            graph,
            field,
            nonedges,
            nonedge_index,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        })
    }

    pub fn with_enumeration_cap(mut self, cap: u128) -> Self {
        self.enumeration_cap = cap;
        self
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    /// Number of generators = dim of `V = G/Z`.
    pub fn generator_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Number of non-edges = dim of `Z` = dim of `W`.
    pub fn center_dim(&self) -> usize {
        self.nonedges.len()
    }

    pub fn nonedges(&self) -> &[(usize, usize)] {
        &self.nonedges
    }

    pub fn nonedge_position(&self, i: usize, j: usize) -> Option<usize> {
        self.nonedge_index.get(&(i.min(j), i.max(j))).copied()
    }

    pub fn order(&self) -> GroupOrder {
        GroupOrder {
            base: self.p(),
            exponent: self.generator_count() + self.center_dim(),
        }
    }

    pub fn enumeration_cap(&self) -> u128 {
        self.enumeration_cap
    }

    // ---- element constructors ---------------------------------------------

    pub fn identity(&self) -> MeklerElement {
        MeklerElement {
            gen: vec![0; self.generator_count()],
            com: vec![0; self.center_dim()],
        }
    }

    /// The generator `x_i` for vertex `i`.
    pub fn generator(&self, i: usize) -> MeklerElement {
        assert!(i < self.generator_count(), "vertex {i} out of range");
        let mut gen = vec![0; self.generator_count()];
        gen[i] = 1;
        MeklerElement {
            gen,
            com: vec![0; self.center_dim()],
        }
    }

    /// Builds an element from normal-form coordinates, validating dimensions
    /// and ranges.
    pub fn element(&self, gen: Vec<u64>, com: Vec<u64>) -> Result<MeklerElement> {
        if gen.len() != self.generator_count() || com.len() != self.center_dim() {
            return Err(Error::DimensionMismatch(format!(
                "expected gen length {} and com length {}, got {} and {}",
                self.generator_count(),
                self.center_dim(),
                gen.len(),
                com.len()
            )));
        }
        self.field.validate_vec(&gen)?;
        self.field.validate_vec(&com)?;
        Ok(MeklerElement { gen, com })
    }

    /// An element with the given image in `V` and zero central part.
    pub fn from_image(&self, image: &[u64]) -> Result<MeklerElement> {
        self.element(image.to_vec(), vec![0; self.center_dim()])
    }

    /// A central element with the given `W`-coordinates.
    pub fn central_element(&self, com: Vec<u64>) -> Result<MeklerElement> {
        self.element(vec![0; self.generator_count()], com)
    }

    fn check_element(&self, g: &MeklerElement) -> Result<()> {
        if g.gen.len() != self.generator_count() || g.com.len() != self.center_dim() {
            return Err(Error::DimensionMismatch(format!(
                "element has gen/com lengths {}/{}, group expects {}/{}",
                g.gen.len(),
                g.com.len(),
                self.generator_count(),
                self.center_dim()
            )));
        }
        Ok(())
    }

    // ---- group law ----------------------------------------------------------

    /// The collection cocycle `κ(a, b)`: the central correction picked up
    /// when the normal forms `x^a` and `x^b` are merged into `x^{a+b}`.
    fn collection_cocycle(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let f = &self.field;
        self.nonedges
            .iter()
            .map(|&(i, j)| f.neg(f.mul(a[j], b[i])))
            .collect()
    }

    pub fn multiply(&self, a: &MeklerElement, b: &MeklerElement) -> Result<MeklerElement> {
        self.check_element(a)?;
        self.check_element(b)?;
        let f = &self.field;
        let gen = f.vec_add(&a.gen, &b.gen);
        let kappa = self.collection_cocycle(&a.gen, &b.gen);
        let com = f.vec_add(&f.vec_add(&a.com, &b.com), &kappa);
        Ok(MeklerElement { gen, com })
    }

    pub fn inverse(&self, g: &MeklerElement) -> Result<MeklerElement> {
        self.check_element(g)?;
        let f = &self.field;
        let kappa = self.collection_cocycle(&g.gen, &g.gen);
        Ok(MeklerElement {
            gen: f.vec_neg(&g.gen),
            com: f.vec_sub(&kappa, &g.com),
        })
    }

    /// `g^k` via the class-2 power formula
    /// `g^k = (k·gen, k·com + C(k,2)·κ(gen, gen))`; only `k mod p` matters.
    pub fn power(&self, g: &MeklerElement, k: i64) -> Result<MeklerElement> {
        self.check_element(g)?;
        let f = &self.field;
        let k = f.reduce_i64(k);
        let binom = if k == 0 { 0 } else { f.mul(k, k - 1) };
        let binom = f.mul(binom, f.inv(2)); // p odd, so 2 is invertible
        let kappa = self.collection_cocycle(&g.gen, &g.gen);
        Ok(MeklerElement {
            gen: f.vec_scale(k, &g.gen),
            com: f.vec_add(&f.vec_scale(k, &g.com), &f.vec_scale(binom, &kappa)),
        })
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`. Always central; bilinear and alternating in
    /// the images of `a` and `b`.
    pub fn commutator(&self, a: &MeklerElement, b: &MeklerElement) -> Result<MeklerElement> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(MeklerElement {
            gen: vec![0; self.generator_count()],
            com: self.beta_image(&a.gen, &b.gen),
        })
    }

    /// The commutator map on images: `β(v, w) ∈ W` with coordinate
    /// `v_i·w_j − v_j·w_i` at each non-edge `{i, j}`, `i < j`.
    pub fn beta_image(&self, v: &[u64], w: &[u64]) -> Vec<u64> {
        let f = &self.field;
        self.nonedges
            .iter()
            .map(|&(i, j)| f.sub(f.mul(v[i], w[j]), f.mul(v[j], w[i])))
            .collect()
    }

    // ---- centre -------------------------------------------------------------

    pub fn is_central(&self, g: &MeklerElement) -> bool {
        is_zero_vec(&g.gen)
    }

    pub fn is_identity(&self, g: &MeklerElement) -> bool {
        is_zero_vec(&g.gen) && is_zero_vec(&g.com)
    }

    /// The natural projection `π : G → V = G/Z`.
    pub fn project_mod_center(&self, g: &MeklerElement) -> Vec<u64> {
        g.gen.clone()
    }

    /// The reverse inclusion `ρ : G → W = Z`: the central coordinates when
    /// `g` is central, and `0` otherwise.
    pub fn center_part(&self, g: &MeklerElement) -> Vec<u64> {
        if self.is_central(g) {
            g.com.clone()
        } else {
            vec![0; self.center_dim()]
        }
    }

    // ---- centralizers ---------------------------------------------------------

    /// The matrix of `w ↦ β(v, w)`, rows indexed by non-edges.
    pub fn beta_row_matrix(&self, v: &[u64]) -> Vec<Vec<u64>> {
        let f = &self.field;
        let n = self.generator_count();
        self.nonedges
            .iter()
            .map(|&(i, j)| {
                let mut row = vec![0u64; n];
                row[i] = f.neg(v[j]);
                row[j] = v[i];
                row
            })
            .collect()
    }

    /// Basis of `{w ∈ V : β(π(g), w) = 0}`. The centralizer `C(g)` is the
    /// preimage of this subspace, so `|C(g)| = p^(dim kernel + dim Z)`.
    pub fn centralizer_basis(&self, g: &MeklerElement) -> Result<CentralizerBasis> {
        self.check_element(g)?;
        let m = self.beta_row_matrix(&g.gen);
        let kernel = linalg::kernel_basis(&self.field, &m);
        let exponent = kernel.len() + self.center_dim();
        Ok(CentralizerBasis {
            kernel_basis: kernel,
            centralizer_order: GroupOrder {
                base: self.p(),
                exponent,
            },
        })
    }

    /// Canonical form (RREF) of the centralizer kernel, usable as a key:
    /// two elements are `~`-equivalent exactly when these coincide.
    pub fn centralizer_kernel_canonical(&self, v: &[u64]) -> Vec<Vec<u64>> {
        let m = self.beta_row_matrix(v);
        let kernel = linalg::kernel_basis(&self.field, &m);
        linalg::canonical_subspace(&self.field, &kernel)
    }

    // ---- enumeration ----------------------------------------------------------

    /// Iterates over all elements in lexicographic coordinate order
    /// (`gen` most significant). Refuses when the order exceeds the cap.
    pub fn enumerate_elements(&self) -> Result<ElementIter<'_>> {
        let required = self.order().value().ok_or(Error::CapExceeded {
            required: u128::MAX,
            cap: self.enumeration_cap,
        })?;
        if required > self.enumeration_cap {
            return Err(Error::CapExceeded {
                required,
                cap: self.enumeration_cap,
            });
        }
        Ok(ElementIter {
            group: self,
            next: Some(self.identity()),
        })
    }

    /// Iterates over all of `V = F_p^n` in lexicographic order, subject to
    /// the same cap. Enough for the classification theory, which only
    /// depends on images.
    pub fn enumerate_images(&self) -> Result<impl Iterator<Item = Vec<u64>> + '_> {
        let n = self.generator_count();
        let mut required: u128 = 1;
        for _ in 0..n {
            required = required.saturating_mul(self.p() as u128);
        }
        if required > self.enumeration_cap {
            return Err(Error::CapExceeded {
                required,
                cap: self.enumeration_cap,
            });
        }
        let p = self.p();
        let mut cur = Some(vec![0u64; n]);
        Ok(std::iter::from_fn(move || {
            let out = cur.clone()?;
            cur = next_vec(p, out.clone());
            Some(out)
        }))
    }

    // ---- text form ------------------------------------------------------------

    /// Parses the element text form `gen=[...];com=[...]`.
    pub fn parse_element(&self, text: &str) -> Result<MeklerElement> {
        let err = |msg: &str| Error::Input(format!("bad element literal: {msg}"));
        let text = text.trim();
        let (gen_part, com_part) = text
            .split_once(';')
            .ok_or_else(|| err("expected `gen=[...];com=[...]`"))?;
        let parse_side = |part: &str, tag: &str| -> Result<Vec<u64>> {
            let body = part
                .trim()
                .strip_prefix(tag)
                .and_then(|s| s.strip_prefix("=["))
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| err(&format!("expected `{tag}=[...]`")))?;
            if body.trim().is_empty() {
                return Ok(Vec::new());
            }
            body.split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<u64>()
                        .map_err(|_| err(&format!("bad digit {tok:?}")))
                })
                .collect()
        };
        let gen = parse_side(gen_part, "gen")?;
        let com = parse_side(com_part, "com")?;
        self.element(gen, com)
    }
}

fn next_vec(p: u64, mut v: Vec<u64>) -> Option<Vec<u64>> {
    for i in (0..v.len()).rev() {
        if v[i] + 1 < p {
            v[i] += 1;
            return Some(v);
        }
        v[i] = 0;
    }
    None
}

/// Kernel basis of the commutation form at an element, plus the size of the
/// full centralizer it determines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralizerBasis {
    pub kernel_basis: Vec<Vec<u64>>,
    pub centralizer_order: GroupOrder,
}

/// Lexicographic iterator over all elements of the group.
pub struct ElementIter<'a> {
    group: &'a MeklerGroup,
    next: Option<MeklerElement>,
}

impl Iterator for ElementIter<'_> {
    type Item = MeklerElement;

    fn next(&mut self) -> Option<MeklerElement> {
        let out = self.next.clone()?;
        let p = self.group.p();
        // increment (gen, com) as one odometer, com least significant
        let MeklerElement { gen, com } = out.clone();
        self.next = match next_vec(p, com) {
            Some(com) => Some(MeklerElement { gen, com }),
            None => next_vec(p, gen).map(|gen| MeklerElement {
                gen,
                com: vec![0; self.group.center_dim()],
            }),
        };
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_cycle, make_petersen};
    use proptest::prelude::*;

    fn c5_group() -> MeklerGroup {
        MeklerGroup::build(make_cycle(5).unwrap(), 3).unwrap()
    }

    #[test]
    fn build_rejects_triangle_and_bad_primes() {
        let k3 = make_complete(3).unwrap();
        assert!(matches!(
            MeklerGroup::build(k3.clone(), 3),
            Err(Error::NotNice(_))
        ));
        // override path still works for experiments
        assert!(MeklerGroup::build_unchecked(k3, 3).is_ok());
        let c5 = make_cycle(5).unwrap();
        assert!(matches!(
            MeklerGroup::build(c5.clone(), 2),
            Err(Error::NotOddPrime(2))
        ));
        assert!(matches!(
            MeklerGroup::build(c5, 9),
            Err(Error::NotOddPrime(9))
        ));
    }

    #[test]
    fn order_matches_formula() {
        let g = c5_group();
        assert_eq!(g.order().value(), Some(59049)); // 3^(5+5)
        let c6 = MeklerGroup::build(make_cycle(6).unwrap(), 3).unwrap();
        assert_eq!(
            c6.order(),
            GroupOrder {
                base: 3,
                exponent: 15
            }
        );
        assert_eq!(c6.order().value(), Some(14_348_907));
    }

    #[test]
    fn identity_is_neutral() {
        let g = c5_group();
        let e = g.identity();
        let h = g.element(vec![1, 2, 0, 1, 0], vec![2, 0, 1, 0, 0]).unwrap();
        assert_eq!(g.multiply(&e, &h).unwrap(), h);
        assert_eq!(g.multiply(&h, &e).unwrap(), h);
    }

    #[test]
    fn adjacent_generators_commute() {
        let g = c5_group();
        let x0 = g.generator(0);
        let x1 = g.generator(1);
        let a = g.multiply(&x0, &x1).unwrap();
        let b = g.multiply(&x1, &x0).unwrap();
        assert_eq!(a, b);
        assert!(is_zero_vec(a.com()));
        assert!(g.is_identity(&g.commutator(&x0, &x1).unwrap()));
    }

    #[test]
    fn nonadjacent_products_differ_by_one_commutator_coordinate() {
        let g = c5_group();
        let x0 = g.generator(0);
        let x2 = g.generator(2);
        let ab = g.multiply(&x0, &x2).unwrap();
        let ba = g.multiply(&x2, &x0).unwrap();
        assert_eq!(ab.gen(), ba.gen());
        let idx = g.nonedge_position(0, 2).unwrap();
        let f = g.field();
        let mut diff = f.vec_sub(ab.com(), ba.com());
        assert!(diff[idx] == 1 || diff[idx] == g.p() - 1);
        diff[idx] = 0;
        assert!(is_zero_vec(&diff));
    }

    #[test]
    fn commutator_of_nonedge_is_positive_basis_vector() {
        let g = c5_group();
        let c = g.commutator(&g.generator(0), &g.generator(2)).unwrap();
        assert!(g.is_central(&c));
        let idx = g.nonedge_position(0, 2).unwrap();
        let mut expected = vec![0; g.center_dim()];
        expected[idx] = 1;
        assert_eq!(c.com(), &expected[..]);
        assert_eq!(g.center_part(&c), expected);
    }

    #[test]
    fn commutator_is_alternating() {
        let g = c5_group();
        let h = g.element(vec![1, 2, 0, 1, 2], vec![0, 0, 0, 0, 0]).unwrap();
        assert!(g.is_identity(&g.commutator(&h, &h).unwrap()));
    }

    #[test]
    fn rho_vanishes_off_centre() {
        let g = c5_group();
        let x0 = g.generator(0);
        assert_eq!(g.center_part(&x0), vec![0; 5]);
        assert_eq!(g.project_mod_center(&g.identity()), vec![0; 5]);
    }

    #[test]
    fn inverse_and_exponent_p() {
        let g = c5_group();
        let x0 = g.generator(0);
        let x2 = g.generator(2);
        let prod = g.multiply(&x0, &x2).unwrap();
        let inv = g.inverse(&prod).unwrap();
        assert!(g.is_identity(&g.multiply(&prod, &inv).unwrap()));
        assert!(g.is_identity(&g.multiply(&inv, &prod).unwrap()));
        assert_eq!(g.inverse(&g.identity()).unwrap(), g.identity());
        assert_eq!(g.power(&prod, 3).unwrap(), g.identity());
        assert_eq!(g.power(&prod, -1).unwrap(), inv);
    }

    #[test]
    fn centralizer_of_generator_is_self_plus_neighbors() {
        let g = c5_group();
        let basis = g.centralizer_basis(&g.generator(0)).unwrap();
        // kernel of beta(e0, ·) in C5: span{e0, e1, e4}
        let f = g.field();
        let expected = vec![
            vec![1, 0, 0, 0, 0],
            vec![0, 1, 0, 0, 0],
            vec![0, 0, 0, 0, 1],
        ];
        assert!(linalg::same_subspace(f, &basis.kernel_basis, &expected));
        assert_eq!(
            basis.centralizer_order,
            GroupOrder {
                base: 3,
                exponent: 8
            }
        );
    }

    #[test]
    fn centralizer_of_distance_two_product_has_dim_two_kernel() {
        let g = c5_group();
        let prod = g.multiply(&g.generator(0), &g.generator(2)).unwrap();
        let basis = g.centralizer_basis(&prod).unwrap();
        assert_eq!(basis.kernel_basis.len(), 2);
        let f = g.field();
        assert!(linalg::in_span(f, &basis.kernel_basis, &[0, 1, 0, 0, 0]));
        assert!(linalg::in_span(f, &basis.kernel_basis, &[1, 0, 1, 0, 0]));
    }

    #[test]
    fn central_element_centralizes_everything() {
        let g = c5_group();
        let z = g.central_element(vec![1, 0, 2, 0, 0]).unwrap();
        let basis = g.centralizer_basis(&z).unwrap();
        assert_eq!(basis.kernel_basis.len(), 5);
        assert_eq!(basis.centralizer_order, g.order());
    }

    #[test]
    fn enumeration_counts_and_cap() {
        let g = c5_group();
        assert_eq!(g.enumerate_elements().unwrap().count(), 59049);

        let petersen = MeklerGroup::build(make_petersen(), 3).unwrap();
        match petersen.enumerate_elements() {
            Err(Error::CapExceeded { required, cap }) => {
                assert_eq!(cap, DEFAULT_ENUMERATION_CAP);
                assert_eq!(required, 3u128.pow(40));
            }
            other => panic!("expected cap refusal, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn enumeration_yields_distinct_elements_in_lex_order() {
        let tiny = MeklerGroup::build(make_cycle(5).unwrap(), 3)
            .unwrap()
            .with_enumeration_cap(100_000);
        let all: Vec<MeklerElement> = tiny.enumerate_elements().unwrap().collect();
        assert_eq!(all.len(), 59049);
        assert!(tiny.is_identity(&all[0]));
        let set: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(set.len(), all.len());
    }

    #[test]
    fn element_literal_round_trip() {
        let g = c5_group();
        let h = g.parse_element("gen=[1,0,1,0,0];com=[0,2,0,0,1]").unwrap();
        assert_eq!(h.gen(), &[1, 0, 1, 0, 0]);
        assert_eq!(h.to_string(), "gen=[1,0,1,0,0];com=[0,2,0,0,1]");
        assert!(g.parse_element("gen=[1,0];com=[0]").is_err());
        assert!(g.parse_element("gen=[9,0,0,0,0];com=[0,0,0,0,0]").is_err());
        assert!(g.parse_element("nonsense").is_err());
    }

    proptest! {
        #[test]
        fn multiplication_is_associative(
            a in proptest::collection::vec(0u64..3, 10),
            b in proptest::collection::vec(0u64..3, 10),
            c in proptest::collection::vec(0u64..3, 10),
        ) {
            let g = c5_group();
            let mk = |v: &[u64]| g.element(v[..5].to_vec(), v[5..].to_vec()).unwrap();
            let (x, y, z) = (mk(&a), mk(&b), mk(&c));
            let left = g.multiply(&g.multiply(&x, &y).unwrap(), &z).unwrap();
            let right = g.multiply(&x, &g.multiply(&y, &z).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn every_element_has_exponent_p(v in proptest::collection::vec(0u64..3, 10)) {
            let g = c5_group();
            let x = g.element(v[..5].to_vec(), v[5..].to_vec()).unwrap();
            prop_assert!(g.is_identity(&g.power(&x, 3).unwrap()));
            let via_mult = g.multiply(&g.multiply(&x, &x).unwrap(), &x).unwrap();
            prop_assert!(g.is_identity(&via_mult));
        }

        #[test]
        fn commutator_matches_defining_word(
            a in proptest::collection::vec(0u64..3, 10),
            b in proptest::collection::vec(0u64..3, 10),
        ) {
            let g = c5_group();
            let x = g.element(a[..5].to_vec(), a[5..].to_vec()).unwrap();
            let y = g.element(b[..5].to_vec(), b[5..].to_vec()).unwrap();
            let word = g.multiply(
                &g.multiply(&g.inverse(&x).unwrap(), &g.inverse(&y).unwrap()).unwrap(),
                &g.multiply(&x, &y).unwrap(),
            ).unwrap();
            prop_assert_eq!(g.commutator(&x, &y).unwrap(), word);
        }
    }
}

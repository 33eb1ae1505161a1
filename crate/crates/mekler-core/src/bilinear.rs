//! Alternating bilinear systems of `F_p`-vector spaces: the reduction target
//! `F(G) = (V, W, β)` of a 2-nilpotent exponent-`p` group, standalone
//! systems, the commutation relation `R`, separated bases, the order-`n`
//! sets `W_n` and the imaginary sorts `B_n` with their maps `π_A` and `f_n`.
//!
//! A basis `v_0, …, v_{k-1}` of a subspace is *separated* when any vanishing
//! combination `Σ α_{ij} β(v_i, v_j) = 0` forces `α_{ij} = 0` at every pair
//! with `β(v_i, v_j) ≠ 0`; equivalently, the family of nonzero values
//! `β(v_i, v_j)`, one per pair, is linearly independent in `W`. The second
//! form is the operational criterion here (a rank computation); the literal
//! quantified form is kept as a brute-force oracle in [`crate::oracle`].
//!
//! `W_n` is the set of `w = Σ_{i<j} a_{ij} β(v_i, v_j)` over antisymmetric
//! `n×n` matrices `A` and tuples `v̄ ∈ V^n`. Over a field every antisymmetric
//! matrix is congruent to a block-diagonal of hyperbolic 2×2 blocks, and the
//! change of basis can be absorbed into `v̄`, so `W_n` is exactly the set of
//! sums of at most `⌊n/2⌋` single values `β(u, u')`. Membership is decided
//! by a breadth-first sumset walk that also returns an explicit preimage for
//! `f_n`.

use serde::{Deserialize, Serialize};

use crate::fp::{is_zero_vec, PrimeField};
use crate::group::MeklerGroup;
use crate::linalg;
use crate::{Error, Partial, Result};

/// Caps the projective enumerations used by the separatedness search and the
/// counting certificate.
const MAX_PROJECTIVE_LINES: usize = 1500;

/// Largest subspace dimension for which `find_separated_basis` searches
/// exhaustively over line subsets.
pub const EXHAUSTIVE_SEARCH_DIM: usize = 4;

type SingleValues = Vec<(Vec<u64>, (Vec<u64>, Vec<u64>))>;

/// An alternating bilinear system `(V, W, β)` over `F_p`, given by the
/// structure constants `β(e_i, e_j) ∈ W` for `i < j` and extended
/// alternately. Immutable after construction and safe to share; the only
/// interior state is an idempotent cache of the single `β`-value table used
/// by the `W_n` searches.
#[derive(Debug)]
pub struct BilinearSystem {
    field: PrimeField,
    dim_v: usize,
    dim_w: usize,
    /// `β(e_i, e_j)` for `i < j`, in lexicographic pair order.
    beta_basis: Vec<Vec<u64>>,
    singles_cache: std::sync::OnceLock<SingleValues>,
}

impl Clone for BilinearSystem {
    fn clone(&self) -> Self {
        BilinearSystem {
            field: self.field,
            dim_v: self.dim_v,
            dim_w: self.dim_w,
            beta_basis: self.beta_basis.clone(),
            singles_cache: std::sync::OnceLock::new(),
        }
    }
}

impl PartialEq for BilinearSystem {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.dim_v == other.dim_v
            && self.dim_w == other.dim_w
            && self.beta_basis == other.beta_basis
    }
}

impl Eq for BilinearSystem {}

/// Serialization schema: `{p, dimV, dimW, beta: [[i, j, w_coords], ...]}`
/// with one entry per nonzero structure constant.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BilinearSystemSchema {
    pub p: u64,
    #[serde(rename = "dimV")]
    pub dim_v: usize,
    #[serde(rename = "dimW")]
    pub dim_w: usize,
    pub beta: Vec<(usize, usize, Vec<u64>)>,
}

impl BilinearSystem {
    /// Builds a system from its nonzero structure constants.
    pub fn new(
        p: u64,
        dim_v: usize,
        dim_w: usize,
        constants: &[(usize, usize, Vec<u64>)],
    ) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let pairs = dim_v * dim_v.saturating_sub(1) / 2;
        let mut beta_basis = vec![vec![0u64; dim_w]; pairs];
        for (i, j, value) in constants {
            if i >= j || *j >= dim_v {
                return Err(Error::Input(format!(
                    "structure constant index ({i}, {j}) must satisfy i < j < dimV"
                )));
            }
            if value.len() != dim_w {
                return Err(Error::DimensionMismatch(format!(
                    "structure constant ({i}, {j}) has length {}, expected {dim_w}",
                    value.len()
                )));
            }
            field.validate_vec(value)?;
            beta_basis[pair_index(dim_v, *i, *j)] = value.clone();
        }
        Ok(BilinearSystem {
            field,
            dim_v,
            dim_w,
            beta_basis,
            singles_cache: std::sync::OnceLock::new(),
        })
    }

    /// The functor `F` applied to a Mekler group: `V = F_p^{|vertices|}`,
    /// `W = F_p^{#non-edges}`, `β` the commutator map.
    pub fn f_of_group(group: &MeklerGroup) -> Self {
        let dim_v = group.generator_count();
        let dim_w = group.center_dim();
        let mut beta_basis = Vec::with_capacity(dim_v * dim_v.saturating_sub(1) / 2);
        for i in 0..dim_v {
            for j in (i + 1)..dim_v {
                let mut value = vec![0u64; dim_w];
                if let Some(idx) = group.nonedge_position(i, j) {
                    value[idx] = 1;
                }
                beta_basis.push(value);
            }
        }
        BilinearSystem {
            field: *group.field(),
            dim_v,
            dim_w,
            beta_basis,
            singles_cache: std::sync::OnceLock::new(),
        }
    }

    /// The full wedge system `(V, V∧V, ∧)` on `F_p^dim`. Separated: the
    /// basis wedges are a basis of `V∧V`.
    pub fn wedge_system(p: u64, dim: usize) -> Result<Self> {
        let pairs = dim * dim.saturating_sub(1) / 2;
        let mut constants = Vec::with_capacity(pairs);
        for i in 0..dim {
            for j in (i + 1)..dim {
                let mut value = vec![0u64; pairs];
                value[pair_index(dim, i, j)] = 1;
                constants.push((i, j, value));
            }
        }
        Self::new(p, dim, pairs, &constants)
    }

    /// The non-separated quotient fixture: `V = F_p^4` and
    /// `W = V∧V / ⟨v_0∧v_1 − v_2∧v_3⟩`, of dimension 5. The merged
    /// coordinate comes first, then the four untouched wedge coordinates.
    pub fn wedge_quotient_fixture(p: u64) -> Result<Self> {
        let coords: &[(usize, usize, usize)] = &[
            (0, 1, 0), // identified with (2, 3)
            (2, 3, 0),
            (0, 2, 1),
            (0, 3, 2),
            (1, 2, 3),
            (1, 3, 4),
        ];
        let constants: Vec<(usize, usize, Vec<u64>)> = coords
            .iter()
            .map(|&(i, j, w)| {
                let mut value = vec![0u64; 5];
                value[w] = 1;
                (i, j, value)
            })
            .collect();
        Self::new(p, 4, 5, &constants)
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn dim_w(&self) -> usize {
        self.dim_w
    }

    pub fn to_schema(&self) -> BilinearSystemSchema {
        let mut beta = Vec::new();
        for i in 0..self.dim_v {
            for j in (i + 1)..self.dim_v {
                let value = &self.beta_basis[pair_index(self.dim_v, i, j)];
                if !is_zero_vec(value) {
                    beta.push((i, j, value.clone()));
                }
            }
        }
        BilinearSystemSchema {
            p: self.p(),
            dim_v: self.dim_v,
            dim_w: self.dim_w,
            beta,
        }
    }

    pub fn from_schema(schema: &BilinearSystemSchema) -> Result<Self> {
        Self::new(schema.p, schema.dim_v, schema.dim_w, &schema.beta)
    }

    fn check_v(&self, v: &[u64]) -> Result<()> {
        if v.len() != self.dim_v {
            return Err(Error::DimensionMismatch(format!(
                "V-vector has length {}, expected {}",
                v.len(),
                self.dim_v
            )));
        }
        self.field.validate_vec(v)
    }

    fn check_w(&self, w: &[u64]) -> Result<()> {
        if w.len() != self.dim_w {
            return Err(Error::DimensionMismatch(format!(
                "W-vector has length {}, expected {}",
                w.len(),
                self.dim_w
            )));
        }
        self.field.validate_vec(w)
    }

    /// Bilinear evaluation `β(v, w)`.
    pub fn beta(&self, v: &[u64], w: &[u64]) -> Result<Vec<u64>> {
        self.check_v(v)?;
        self.check_v(w)?;
        let f = &self.field;
        let mut out = vec![0u64; self.dim_w];
        for i in 0..self.dim_v {
            for j in (i + 1)..self.dim_v {
                let coeff = f.sub(f.mul(v[i], w[j]), f.mul(v[j], w[i]));
                if coeff != 0 {
                    f.vec_add_scaled(
                        &mut out,
                        coeff,
                        &self.beta_basis[pair_index(self.dim_v, i, j)],
                    );
                }
            }
        }
        Ok(out)
    }

    /// The commutation relation `R = {(v, w) : β(v, w) = 0}`.
    pub fn relation_r(&self, v: &[u64], w: &[u64]) -> Result<bool> {
        Ok(is_zero_vec(&self.beta(v, w)?))
    }
}

fn pair_index(dim: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < dim);
    // lexicographic rank of (i, j) among pairs i < j
    i * dim - i * (i + 1) / 2 + (j - i - 1)
}

// ---------------------------------------------------------------------------
// Separatedness
// ---------------------------------------------------------------------------

/// A vanishing combination `Σ α_{ij} β(v_i, v_j) = 0` with some `α_{ij} ≠ 0`
/// at a pair whose `β`-value is nonzero: the witness that a basis is not
/// separated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingCombination {
    /// Coefficients on pairs `(i, j)` with nonzero `β(v_i, v_j)`.
    pub coefficients: Vec<(usize, usize, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatedVerdict {
    pub separated: bool,
    pub witness: Option<VanishingCombination>,
}

impl BilinearSystem {
    /// Decides whether linearly independent `vectors` form a separated
    /// basis: the nonzero values `β(v_i, v_j)` for `i < j` must be linearly
    /// independent in `W`. On failure the witness is a concrete vanishing
    /// combination with a nonzero coefficient.
    pub fn is_separated_basis(&self, vectors: &[Vec<u64>]) -> Result<SeparatedVerdict> {
        for v in vectors {
            self.check_v(v)?;
        }
        if linalg::rank(&self.field, vectors) != vectors.len() {
            return Err(Error::DependentInput);
        }
        let mut pairs = Vec::new();
        let mut values: Vec<Vec<u64>> = Vec::new();
        for i in 0..vectors.len() {
            for j in (i + 1)..vectors.len() {
                let value = self.beta(&vectors[i], &vectors[j])?;
                if !is_zero_vec(&value) {
                    pairs.push((i, j));
                    values.push(value);
                }
            }
        }
        if linalg::rank(&self.field, &values) == values.len() {
            return Ok(SeparatedVerdict {
                separated: true,
                witness: None,
            });
        }
        // values as columns of an equation system: rows are W-coordinates
        let rows: Vec<Vec<u64>> = (0..self.dim_w)
            .map(|r| values.iter().map(|val| val[r]).collect())
            .collect();
        let kernel = linalg::kernel_basis(&self.field, &rows);
        let alpha = kernel
            .into_iter()
            .next()
            .ok_or_else(|| Error::Internal("rank defect without kernel vector".into()))?;
        let coefficients = pairs
            .iter()
            .zip(&alpha)
            .filter(|(_, &a)| a != 0)
            .map(|(&(i, j), &a)| (i, j, a))
            .collect();
        Ok(SeparatedVerdict {
            separated: false,
            witness: Some(VanishingCombination { coefficients }),
        })
    }

    /// One representative per line of the subspace spanned by `basis`.
    fn subspace_lines(&self, basis: &[Vec<u64>]) -> Result<Vec<Vec<u64>>> {
        let f = &self.field;
        let d = basis.len();
        let count = ((f.p() as u128).pow(d as u32) - 1) / (f.p() as u128 - 1);
        if count > MAX_PROJECTIVE_LINES as u128 {
            return Err(Error::BoundExceeded(format!(
                "subspace of dimension {d} has {count} lines, above the bound of {MAX_PROJECTIVE_LINES}"
            )));
        }
        let mut out = Vec::new();
        for coeffs in linalg::projective_lines(f, d) {
            let mut v = vec![0u64; self.dim_v];
            for (c, b) in coeffs.iter().zip(basis) {
                f.vec_add_scaled(&mut v, *c, b);
            }
            out.push(
                f.normalize_line(&v)
                    .expect("independent basis gives nonzero vector"),
            );
        }
        Ok(out)
    }

    /// The dimension-count certificate of non-separatedness: if every pair
    /// of linearly independent vectors in the subspace has `β ≠ 0`, a
    /// separated basis would make the `d(d−1)/2` values linearly
    /// independent, which is impossible when `dim ⟨β(V₀, V₀)⟩` is smaller.
    pub fn counting_certificate(
        &self,
        spanning: &[Vec<u64>],
    ) -> Result<Option<CountingCertificate>> {
        for v in spanning {
            self.check_v(v)?;
        }
        let basis = linalg::canonical_subspace(&self.field, spanning);
        let d = basis.len();
        if d < 2 {
            return Ok(None);
        }
        let lines = self.subspace_lines(&basis)?;
        for a in 0..lines.len() {
            for b in (a + 1)..lines.len() {
                if is_zero_vec(&self.beta(&lines[a], &lines[b])?) {
                    return Ok(None); // some independent pair vanishes
                }
            }
        }
        let mut values = Vec::new();
        for i in 0..d {
            for j in (i + 1)..d {
                values.push(self.beta(&basis[i], &basis[j])?);
            }
        }
        let beta_span_dim = linalg::rank(&self.field, &values);
        let required = d * (d - 1) / 2;
        if beta_span_dim < required {
            Ok(Some(CountingCertificate {
                subspace_dim: d,
                beta_span_dim,
                required,
            }))
        } else {
            Ok(None)
        }
    }

    /// Searches for a separated basis of the subspace spanned by the given
    /// vectors.
    ///
    /// The canonical reduction basis is tried first; up to dimension
    /// [`EXHAUSTIVE_SEARCH_DIM`] the search over sets of subspace lines is
    /// exhaustive (separatedness is invariant under scaling and reordering,
    /// so line sets cover all bases). Beyond that a bounded replacement
    /// heuristic runs: each vanishing combination triggers basis repairs
    /// `v_i ← v_i + λ v_k`. Non-existence is only ever asserted together
    /// with the counting certificate; a fruitless bounded search without one
    /// reports `Indeterminate`.
    pub fn find_separated_basis(&self, spanning: &[Vec<u64>]) -> Result<SeparatedSearch> {
        for v in spanning {
            self.check_v(v)?;
        }
        let basis = linalg::canonical_subspace(&self.field, spanning);
        let d = basis.len();
        if d <= 1 {
            return Ok(SeparatedSearch::Found(basis));
        }
        if self.is_separated_basis(&basis)?.separated {
            return Ok(SeparatedSearch::Found(basis));
        }
        if d <= EXHAUSTIVE_SEARCH_DIM {
            let lines = self.subspace_lines(&basis)?;
            if let Some(found) = self.search_line_subsets(&lines, d)? {
                return Ok(SeparatedSearch::Found(found));
            }
        } else if let Some(found) = self.repair_heuristic(basis.clone())? {
            return Ok(SeparatedSearch::Found(found));
        }
        match self.counting_certificate(spanning)? {
            Some(cert) => Ok(SeparatedSearch::NoneCertified(cert)),
            None => Ok(SeparatedSearch::Indeterminate),
        }
    }

    fn search_line_subsets(&self, lines: &[Vec<u64>], d: usize) -> Result<Option<Vec<Vec<u64>>>> {
        let mut chosen: Vec<usize> = Vec::new();
        self.line_subsets_rec(lines, d, 0, &mut chosen)
    }

    fn line_subsets_rec(
        &self,
        lines: &[Vec<u64>],
        d: usize,
        start: usize,
        chosen: &mut Vec<usize>,
    ) -> Result<Option<Vec<Vec<u64>>>> {
        if chosen.len() == d {
            let candidate: Vec<Vec<u64>> = chosen.iter().map(|&i| lines[i].clone()).collect();
            if linalg::rank(&self.field, &candidate) == d
                && self.is_separated_basis(&candidate)?.separated
            {
                return Ok(Some(candidate));
            }
            return Ok(None);
        }
        for next in start..lines.len() {
            chosen.push(next);
            if let Some(found) = self.line_subsets_rec(lines, d, next + 1, chosen)? {
                return Ok(Some(found));
            }
            chosen.pop();
        }
        Ok(None)
    }

    fn repair_heuristic(&self, mut basis: Vec<Vec<u64>>) -> Result<Option<Vec<Vec<u64>>>> {
        let f = self.field;
        let d = basis.len();
        for _ in 0..d * d {
            let verdict = self.is_separated_basis(&basis)?;
            let Some(witness) = verdict.witness else {
                return Ok(Some(basis));
            };
            let Some(&(i, j, _)) = witness.coefficients.first() else {
                return Ok(None);
            };
            let mut improved = false;
            'repair: for target in [i, j] {
                for k in 0..d {
                    if k == target {
                        continue;
                    }
                    for lambda in 1..f.p() {
                        let mut candidate = basis.clone();
                        let shift = f.vec_scale(lambda, &basis[k]);
                        candidate[target] = f.vec_add(&candidate[target], &shift);
                        if linalg::rank(&f, &candidate) < d {
                            continue;
                        }
                        if self.score(&candidate)? > self.score(&basis)? {
                            basis = candidate;
                            improved = true;
                            break 'repair;
                        }
                    }
                }
            }
            if !improved {
                return Ok(None);
            }
        }
        Ok(None)
    }

    /// Search heuristic score: rank of the nonzero pairwise values minus
    /// their count is 0 exactly when separated; higher is closer.
    fn score(&self, basis: &[Vec<u64>]) -> Result<i64> {
        let mut values = Vec::new();
        for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                let value = self.beta(&basis[i], &basis[j])?;
                if !is_zero_vec(&value) {
                    values.push(value);
                }
            }
        }
        Ok(linalg::rank(&self.field, &values) as i64 - values.len() as i64)
    }
}

/// Dimension-count proof that no separated basis exists: all independent
/// pairs have nonzero `β`, yet the span of `β(V₀, V₀)` is smaller than the
/// `d(d−1)/2` independent values a separated basis would produce.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingCertificate {
    pub subspace_dim: usize,
    pub beta_span_dim: usize,
    pub required: usize,
}

/// Outcome of the separated-basis search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparatedSearch {
    Found(Vec<Vec<u64>>),
    NoneCertified(CountingCertificate),
    Indeterminate,
}

// ---------------------------------------------------------------------------
// W_n, B_n, pi_A and f_n
// ---------------------------------------------------------------------------

/// An element of the imaginary sort `B_n = (𝔸_n × V^n)/≃`: a representative
/// pair plus the canonical value `Σ a_{ij} β(v_i, v_j)` that determines the
/// class. Two values are equal exactly when their canonical values agree.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BnClass {
    pub n: usize,
    pub matrix: Vec<Vec<u64>>,
    pub vectors: Vec<Vec<u64>>,
    pub canonical_value: Vec<u64>,
}

impl PartialEq for BnClass {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_value == other.canonical_value
    }
}

impl Eq for BnClass {}

impl BilinearSystem {
    #[allow(clippy::needless_range_loop)] // index pairs mirror the matrix condition
    fn check_antisymmetric(&self, a: &[Vec<u64>]) -> Result<()> {
        let n = a.len();
        let f = &self.field;
        for row in a {
            if row.len() != n {
                return Err(Error::NotAntisymmetric);
            }
            self.field.validate_vec(row)?;
        }
        for i in 0..n {
            if a[i][i] != 0 {
                return Err(Error::NotAntisymmetric);
            }
            for j in 0..n {
                if a[i][j] != f.neg(a[j][i]) {
                    return Err(Error::NotAntisymmetric);
                }
            }
        }
        Ok(())
    }

    /// The natural projection `π_A(v̄) = (A, v̄)/≃`.
    pub fn pi_a(&self, a: &[Vec<u64>], vbar: &[Vec<u64>]) -> Result<BnClass> {
        self.check_antisymmetric(a)?;
        if vbar.len() != a.len() {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}×{} but tuple has {} vectors",
                a.len(),
                a.len(),
                vbar.len()
            )));
        }
        for v in vbar {
            self.check_v(v)?;
        }
        let f = &self.field;
        let mut value = vec![0u64; self.dim_w];
        for i in 0..vbar.len() {
            for j in (i + 1)..vbar.len() {
                if a[i][j] != 0 {
                    let beta = self.beta(&vbar[i], &vbar[j])?;
                    f.vec_add_scaled(&mut value, a[i][j], &beta);
                }
            }
        }
        Ok(BnClass {
            n: vbar.len(),
            matrix: a.to_vec(),
            vectors: vbar.to_vec(),
            canonical_value: value,
        })
    }

    /// The definable equivalence `≃`: equality of the canonical values.
    pub fn simeq(
        &self,
        a1: &[Vec<u64>],
        vbar1: &[Vec<u64>],
        a2: &[Vec<u64>],
        vbar2: &[Vec<u64>],
    ) -> Result<bool> {
        Ok(self.pi_a(a1, vbar1)? == self.pi_a(a2, vbar2)?)
    }

    /// All values `β(u, u')` with one witnessing pair per value, cached on
    /// first use (the computation is idempotent, so a racing second writer
    /// is harmless).
    fn single_beta_values(&self) -> Result<&SingleValues> {
        if let Some(cached) = self.singles_cache.get() {
            return Ok(cached);
        }
        let computed = self.compute_single_beta_values()?;
        let _ = self.singles_cache.set(computed);
        Ok(self.singles_cache.get().expect("cache was just filled"))
    }

    fn compute_single_beta_values(&self) -> Result<SingleValues> {
        let f = &self.field;
        let count = if self.dim_v == 0 {
            0u128
        } else {
            ((f.p() as u128).pow(self.dim_v as u32) - 1) / (f.p() as u128 - 1)
        };
        if count > MAX_PROJECTIVE_LINES as u128 {
            return Err(Error::BoundExceeded(format!(
                "V has {count} lines, above the bound of {MAX_PROJECTIVE_LINES}"
            )));
        }
        let lines = linalg::projective_lines(f, self.dim_v);
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for a in 0..lines.len() {
            for b in (a + 1)..lines.len() {
                let value = self.beta(&lines[a], &lines[b])?;
                if is_zero_vec(&value) {
                    continue;
                }
                for c in 1..f.p() {
                    let scaled = f.vec_scale(c, &value);
                    if seen.insert(scaled.clone()) {
                        out.push((scaled, (f.vec_scale(c, &lines[a]), lines[b].clone())));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Decides `w ∈ W_n`. The search bound is `n ≤ dimV + 1`: larger `n`
    /// cannot enlarge the reachable set.
    pub fn w_n_membership(&self, w: &[u64], n: usize) -> Result<bool> {
        Ok(self.f_n(w, n)?.is_defined())
    }

    /// The reverse inclusion `f_n : W → B_n`: a preimage class when
    /// `w ∈ W_n`, and the undetermined marker otherwise.
    pub fn f_n(&self, w: &[u64], n: usize) -> Result<Partial<BnClass>> {
        self.check_w(w)?;
        if n > self.dim_v + 1 {
            return Err(Error::BoundExceeded(format!(
                "W_n is only searched for n ≤ dimV + 1 = {}",
                self.dim_v + 1
            )));
        }
        let summands = n / 2;
        if is_zero_vec(w) {
            let zero_matrix = vec![vec![0u64; n]; n];
            let zero_tuple = vec![vec![0u64; self.dim_v]; n];
            return Ok(Partial::Defined(BnClass {
                n,
                matrix: zero_matrix,
                vectors: zero_tuple,
                canonical_value: w.to_vec(),
            }));
        }
        if summands == 0 {
            return Ok(Partial::Undetermined);
        }
        let singles = self.single_beta_values()?;
        // breadth-first sumset walk with parent pointers
        let f = &self.field;
        let mut parents: std::collections::HashMap<Vec<u64>, (Vec<u64>, usize)> =
            std::collections::HashMap::new();
        let zero = vec![0u64; self.dim_w];
        let mut frontier = vec![zero.clone()];
        let mut visited: std::collections::HashSet<Vec<u64>> = frontier.iter().cloned().collect();
        let mut target_depth = None;
        'walk: for _depth in 0..summands {
            let mut next_frontier = Vec::new();
            for sum in &frontier {
                for (idx, (value, _)) in singles.iter().enumerate() {
                    let next = f.vec_add(sum, value);
                    if visited.insert(next.clone()) {
                        parents.insert(next.clone(), (sum.clone(), idx));
                        if next == w {
                            target_depth = Some(());
                            break 'walk;
                        }
                        next_frontier.push(next);
                    }
                }
            }
            frontier = next_frontier;
        }
        if target_depth.is_none() && !visited.contains(w) {
            return Ok(Partial::Undetermined);
        }
        // rebuild the witnessing pairs
        let mut pairs = Vec::new();
        let mut cursor = w.to_vec();
        while cursor != zero {
            let (prev, idx) = parents
                .get(&cursor)
                .ok_or_else(|| Error::Internal("sumset parent chain broken".into()))?;
            pairs.push(singles[*idx].1.clone());
            cursor = prev.clone();
        }
        // hyperbolic block matrix over the witnessing pairs, padded to n
        let mut matrix = vec![vec![0u64; n]; n];
        let mut vectors = vec![vec![0u64; self.dim_v]; n];
        for (k, (u, u2)) in pairs.iter().enumerate() {
            matrix[2 * k][2 * k + 1] = 1;
            matrix[2 * k + 1][2 * k] = self.field.neg(1);
            vectors[2 * k] = u.clone();
            vectors[2 * k + 1] = u2.clone();
        }
        let class = BnClass {
            n,
            matrix,
            vectors,
            canonical_value: w.to_vec(),
        };
        debug_assert_eq!(
            self.pi_a(&class.matrix, &class.vectors)?.canonical_value,
            w,
            "reconstructed preimage must evaluate back to w"
        );
        Ok(Partial::Defined(class))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_cycle;
    use crate::group::MeklerGroup;

    fn c5_system() -> BilinearSystem {
        let group = MeklerGroup::build(make_cycle(5).unwrap(), 3).unwrap();
        BilinearSystem::f_of_group(&group)
    }

    fn basis_vec(dim: usize, i: usize) -> Vec<u64> {
        let mut v = vec![0u64; dim];
        v[i] = 1;
        v
    }

    #[test]
    fn f_of_group_dimensions() {
        let sys = c5_system();
        assert_eq!((sys.dim_v(), sys.dim_w()), (5, 5));
        let c6 = MeklerGroup::build(make_cycle(6).unwrap(), 3).unwrap();
        let sys6 = BilinearSystem::f_of_group(&c6);
        assert_eq!((sys6.dim_v(), sys6.dim_w()), (6, 9));
    }

    #[test]
    fn relation_r_tracks_edges() {
        let sys = c5_system();
        let e0 = basis_vec(5, 0);
        assert!(sys.relation_r(&e0, &basis_vec(5, 1)).unwrap()); // edge
        assert!(!sys.relation_r(&e0, &basis_vec(5, 2)).unwrap()); // non-edge
        let v = vec![1, 2, 0, 1, 2];
        assert!(is_zero_vec(&sys.beta(&v, &v).unwrap()));
    }

    #[test]
    fn beta_rejects_bad_dimensions() {
        let sys = c5_system();
        assert!(sys.beta(&[1, 0, 0], &[0; 5]).is_err());
    }

    #[test]
    fn generator_basis_is_separated() {
        let sys = c5_system();
        let basis: Vec<Vec<u64>> = (0..5).map(|i| basis_vec(5, i)).collect();
        let verdict = sys.is_separated_basis(&basis).unwrap();
        assert!(verdict.separated);
    }

    #[test]
    fn two_dimensional_subspaces_are_always_separated() {
        let sys = BilinearSystem::wedge_quotient_fixture(3).unwrap();
        let lines = linalg::projective_lines(sys.field(), 4);
        for a in 0..lines.len() {
            for b in (a + 1)..lines.len() {
                let pair = vec![lines[a].clone(), lines[b].clone()];
                assert!(sys.is_separated_basis(&pair).unwrap().separated);
            }
        }
    }

    #[test]
    fn wedge_quotient_identifies_the_two_wedges() {
        let sys = BilinearSystem::wedge_quotient_fixture(3).unwrap();
        let b01 = sys.beta(&basis_vec(4, 0), &basis_vec(4, 1)).unwrap();
        let b23 = sys.beta(&basis_vec(4, 2), &basis_vec(4, 3)).unwrap();
        assert_eq!(b01, b23);
        assert!(!is_zero_vec(&b01));
        assert!(!is_zero_vec(
            &sys.beta(&basis_vec(4, 0), &basis_vec(4, 2)).unwrap()
        ));
    }

    #[test]
    fn wedge_quotient_basis_not_separated_with_witness() {
        let sys = BilinearSystem::wedge_quotient_fixture(3).unwrap();
        let basis: Vec<Vec<u64>> = (0..4).map(|i| basis_vec(4, i)).collect();
        let verdict = sys.is_separated_basis(&basis).unwrap();
        assert!(!verdict.separated);
        let witness = verdict.witness.unwrap();
        // the defining relation: pairs (0,1) and (2,3) with opposite signs
        let pairs: Vec<(usize, usize)> = witness
            .coefficients
            .iter()
            .map(|&(i, j, _)| (i, j))
            .collect();
        assert_eq!(pairs, vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn dependent_input_is_rejected() {
        let sys = c5_system();
        let vs = vec![basis_vec(5, 0), basis_vec(5, 0)];
        assert!(matches!(
            sys.is_separated_basis(&vs),
            Err(Error::DependentInput)
        ));
    }

    #[test]
    fn counting_certificate_on_wedge_quotient() {
        let sys = BilinearSystem::wedge_quotient_fixture(3).unwrap();
        let full: Vec<Vec<u64>> = (0..4).map(|i| basis_vec(4, i)).collect();
        let cert = sys.counting_certificate(&full).unwrap().unwrap();
        assert_eq!(cert.subspace_dim, 4);
        assert_eq!(cert.beta_span_dim, 5);
        assert_eq!(cert.required, 6);
    }

    #[test]
    fn no_certificate_when_edges_vanish() {
        let sys = c5_system();
        let full: Vec<Vec<u64>> = (0..5).map(|i| basis_vec(5, i)).collect();
        assert!(sys.counting_certificate(&full).unwrap().is_none());
        // 2-dimensional subspaces never yield a certificate
        let two = vec![basis_vec(5, 0), basis_vec(5, 2)];
        assert!(sys.counting_certificate(&two).unwrap().is_none());
    }

    #[test]
    fn find_separated_basis_on_full_c5_space() {
        let sys = c5_system();
        let spanning: Vec<Vec<u64>> = (0..5).map(|i| basis_vec(5, i)).collect();
        match sys.find_separated_basis(&spanning).unwrap() {
            SeparatedSearch::Found(basis) => {
                assert!(sys.is_separated_basis(&basis).unwrap().separated)
            }
            other => panic!("expected a separated basis, got {other:?}"),
        }
    }

    #[test]
    fn find_separated_basis_certifies_wedge_quotient_failure() {
        let sys = BilinearSystem::wedge_quotient_fixture(3).unwrap();
        let spanning: Vec<Vec<u64>> = (0..4).map(|i| basis_vec(4, i)).collect();
        match sys.find_separated_basis(&spanning).unwrap() {
            SeparatedSearch::NoneCertified(cert) => {
                assert_eq!((cert.beta_span_dim, cert.required), (5, 6))
            }
            other => panic!("expected certified non-existence, got {other:?}"),
        }
    }

    #[test]
    fn wedge_system_is_separated_on_random_subspaces() {
        let sys = BilinearSystem::wedge_system(3, 4).unwrap();
        let spanning: Vec<Vec<u64>> = (0..4).map(|i| basis_vec(4, i)).collect();
        assert!(matches!(
            sys.find_separated_basis(&spanning).unwrap(),
            SeparatedSearch::Found(_)
        ));
    }

    #[test]
    fn w_n_basics() {
        let sys = c5_system();
        let zero = vec![0u64; 5];
        for n in 0..=6 {
            assert!(sys.w_n_membership(&zero, n).unwrap(), "0 ∈ W_{n}");
        }
        // single beta value lies in W_2
        let b02 = sys.beta(&basis_vec(5, 0), &basis_vec(5, 2)).unwrap();
        assert!(sys.w_n_membership(&b02, 2).unwrap());
        assert!(!sys.w_n_membership(&b02, 1).unwrap()); // W_1 = {0}
        assert!(sys.w_n_membership(&b02, 3).unwrap()); // monotone
        assert!(sys.w_n_membership(&b02, 6).unwrap()); // bound is dimV + 1 = 6
        assert!(sys.f_n(&b02, 7).is_err()); // beyond the bound
    }

    #[test]
    fn w_n_outside_beta_span_is_undetermined() {
        // one nonzero structure constant spanning only the first W-coordinate
        let sys = BilinearSystem::new(3, 2, 2, &[(0, 1, vec![1, 0])]).unwrap();
        let outside = vec![0u64, 1];
        for n in 0..=3 {
            assert!(!sys.w_n_membership(&outside, n).unwrap());
            assert_eq!(sys.f_n(&outside, n).unwrap(), Partial::Undetermined);
        }
    }

    #[test]
    fn f_2_inverts_beta() {
        let sys = c5_system();
        let v0 = vec![1, 0, 1, 0, 0];
        let v1 = vec![0, 1, 0, 2, 0];
        let w = sys.beta(&v0, &v1).unwrap();
        if is_zero_vec(&w) {
            panic!("fixture vectors should not commute");
        }
        let class = sys.f_n(&w, 2).unwrap().defined().unwrap();
        assert_eq!(class.canonical_value, w);
        // agreement with pi_A on the standard hyperbolic matrix
        let a = vec![vec![0, 1], vec![2, 0]]; // [[0,1],[-1,0]] mod 3
        let direct = sys.pi_a(&a, &[v0, v1]).unwrap();
        assert_eq!(direct, class);
    }

    #[test]
    fn pi_a_validates_input() {
        let sys = c5_system();
        let bad = vec![vec![0, 1], vec![1, 0]]; // symmetric, not antisymmetric
        assert!(matches!(
            sys.pi_a(&bad, &[basis_vec(5, 0), basis_vec(5, 1)]),
            Err(Error::NotAntisymmetric)
        ));
        let zero = vec![vec![0, 0], vec![0, 0]];
        let class = sys
            .pi_a(&zero, &[basis_vec(5, 0), basis_vec(5, 2)])
            .unwrap();
        assert!(is_zero_vec(&class.canonical_value));
    }

    #[test]
    fn simeq_respects_scaling() {
        let sys = c5_system();
        let f = *sys.field();
        let a = vec![vec![0, 1], vec![2, 0]];
        let vbar = vec![basis_vec(5, 0), basis_vec(5, 2)];
        assert!(sys.simeq(&a, &vbar, &a, &vbar).unwrap());
        // scale the tuple by λ and the matrix by λ^{-2}
        let lambda = 2u64;
        let scaled_vbar: Vec<Vec<u64>> = vbar.iter().map(|v| f.vec_scale(lambda, v)).collect();
        let inv_sq = f.inv(f.mul(lambda, lambda));
        let scaled_a: Vec<Vec<u64>> = a
            .iter()
            .map(|row| row.iter().map(|&x| f.mul(inv_sq, x)).collect())
            .collect();
        assert!(sys.simeq(&a, &vbar, &scaled_a, &scaled_vbar).unwrap());
    }

    #[test]
    fn simeq_identifies_the_wedge_quotient_relation() {
        let sys = BilinearSystem::wedge_quotient_fixture(3).unwrap();
        let a = vec![vec![0, 1], vec![2, 0]];
        let left = vec![basis_vec(4, 0), basis_vec(4, 1)];
        let right = vec![basis_vec(4, 2), basis_vec(4, 3)];
        assert!(sys.simeq(&a, &left, &a, &right).unwrap());
    }

    #[test]
    fn complete_graph_system_is_degenerate() {
        // all generators commute, so W is trivial and beta vanishes
        let k3 = crate::graph::make_complete(3).unwrap();
        let group = MeklerGroup::build_unchecked(k3, 3).unwrap();
        let sys = BilinearSystem::f_of_group(&group);
        assert_eq!(sys.dim_w(), 0);
        let b = sys.beta(&[1, 2, 0], &[0, 1, 1]).unwrap();
        assert!(b.is_empty());
        assert!(sys.relation_r(&[1, 2, 0], &[0, 1, 1]).unwrap());
    }

    #[test]
    fn schema_round_trip() {
        let sys = c5_system();
        let schema = sys.to_schema();
        assert_eq!(schema.beta.len(), 5); // one constant per non-edge
        let back = BilinearSystem::from_schema(&schema).unwrap();
        assert_eq!(back, sys);
    }
}

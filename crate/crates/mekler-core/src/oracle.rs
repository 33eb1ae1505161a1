//! Brute-force reference implementations used by the test suites.
//!
//! Everything here recomputes results straight from definitions — words are
//! rewritten letter by letter, equivalence classes are counted by exhaustive
//! enumeration — with none of the structural shortcuts the main modules use.
//! The suites diff the fast paths against these; where they disagree, the
//! oracle wins.

use std::collections::HashMap;

use crate::fp::is_zero_vec;
use crate::group::{MeklerElement, MeklerGroup};
use crate::linalg;
use crate::Result;

// ---------------------------------------------------------------------------
// Word collection
// ---------------------------------------------------------------------------

/// A group word: generator letters (each of exponent one, in word order)
/// together with an accumulated central part.
#[derive(Debug, Clone)]
pub struct Word {
    pub letters: Vec<usize>,
    pub com: Vec<u64>,
}

/// Expands the normal form of `g` into single letters.
pub fn element_to_word(g: &MeklerElement) -> Word {
    let mut letters = Vec::new();
    for (v, &e) in g.gen().iter().enumerate() {
        for _ in 0..e {
            letters.push(v);
        }
    }
    Word {
        letters,
        com: g.com().to_vec(),
    }
}

/// Collects a word into normal form by adjacent transpositions: whenever a
/// letter `x_a` immediately precedes `x_b` with `a > b`, swap them and, if
/// `{a, b}` is a non-edge, record the emitted commutator
/// `[x_a, x_b] = [x_b, x_a]^{-1}`. Repeats until sorted, then reduces letter
/// multiplicities mod `p`.
pub fn collect_word(group: &MeklerGroup, word: &Word) -> MeklerElement {
    let f = group.field();
    let mut letters = word.letters.clone();
    let mut com = word.com.clone();
    loop {
        let mut swapped = false;
        for pos in 0..letters.len().saturating_sub(1) {
            let (a, b) = (letters[pos], letters[pos + 1]);
            if a > b {
                letters.swap(pos, pos + 1);
                if let Some(idx) = group.nonedge_position(b, a) {
                    com[idx] = f.sub(com[idx], 1);
                }
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    let mut gen = vec![0u64; group.generator_count()];
    for v in letters {
        gen[v] = f.add(gen[v], 1);
    }
    group
        .element(gen, com)
        .expect("collected word stays in range")
}

/// Multiplies two elements by concatenating their letter expansions and
/// collecting. Ground truth for [`MeklerGroup::multiply`].
pub fn word_multiply(group: &MeklerGroup, a: &MeklerElement, b: &MeklerElement) -> MeklerElement {
    let wa = element_to_word(a);
    let wb = element_to_word(b);
    let mut letters = wa.letters;
    letters.extend(wb.letters);
    let com = group.field().vec_add(&wa.com, &wb.com);
    collect_word(group, &Word { letters, com })
}

/// Commutation test through the word oracle: `ab = ba` as collected words.
pub fn words_commute(group: &MeklerGroup, a: &MeklerElement, b: &MeklerElement) -> bool {
    word_multiply(group, a, b) == word_multiply(group, b, a)
}

// ---------------------------------------------------------------------------
// Classification by counting
// ---------------------------------------------------------------------------

/// Brute-force type data for one nonzero image: the number `q` of
/// `≈`-classes inside its `~`-class, and whether it is isolated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountedType {
    pub q: usize,
    pub isolated: bool,
}

/// Per-image classification of the whole of `V \ {0}` by literal counting.
#[derive(Debug, Clone)]
pub struct CountingClassification {
    types: HashMap<Vec<u64>, CountedType>,
    sim_classes: Vec<Vec<Vec<u64>>>,
}

impl CountingClassification {
    pub fn type_of_image(&self, v: &[u64]) -> Option<CountedType> {
        self.types.get(v).copied()
    }

    /// The `~`-classes of nonzero images, each listed as its full member set.
    pub fn sim_classes(&self) -> &[Vec<Vec<u64>>] {
        &self.sim_classes
    }
}

/// Classifies every nonzero image of `V` by exhaustive counting:
/// `~`-classes are grouped by literal centralizer-kernel equality, `q`
/// counts the `≈`-classes (scalar lines) inside each, and isolation checks
/// that every nonzero kernel vector is a scalar multiple of the image.
pub fn classify_by_counting(group: &MeklerGroup) -> Result<CountingClassification> {
    let f = group.field();
    let p = group.p() as usize;
    let mut by_kernel: HashMap<Vec<Vec<u64>>, Vec<Vec<u64>>> = HashMap::new();
    for v in group.enumerate_images()? {
        if is_zero_vec(&v) {
            continue;
        }
        let key = group.centralizer_kernel_canonical(&v);
        by_kernel.entry(key).or_default().push(v);
    }

    let mut types = HashMap::new();
    let mut sim_classes = Vec::new();
    for (kernel, members) in by_kernel {
        assert_eq!(
            members.len() % (p - 1),
            0,
            "sim class size must be a multiple of p-1"
        );
        let q = members.len() / (p - 1);
        let kernel_vectors = linalg::enumerate_subspace(f, &kernel, group.generator_count());
        for v in &members {
            let isolated = kernel_vectors
                .iter()
                .all(|w| is_zero_vec(w) || (1..group.p()).any(|c| f.vec_scale(c, v) == *w));
            types.insert(v.clone(), CountedType { q, isolated });
        }
        sim_classes.push(members);
    }
    // deterministic order for downstream consumers
    sim_classes.sort();
    Ok(CountingClassification { types, sim_classes })
}

// ---------------------------------------------------------------------------
// Separatedness by literal enumeration
// ---------------------------------------------------------------------------

/// Literal separated-basis check: walks every coefficient assignment
/// `(α_{ij})` over the pairs `i < j` and verifies the defining implication
/// `Σ α_{ij} β(v_i, v_j) = 0 ⇒ ∀ i<j: α_{ij} = 0 ∨ β(v_i, v_j) = 0`.
/// Exponential in the pair count; intended for `p = 3` and at most 5
/// vectors.
pub fn separated_by_enumeration(
    sys: &crate::bilinear::BilinearSystem,
    vectors: &[Vec<u64>],
) -> Result<bool> {
    let f = sys.field();
    let p = f.p();
    let k = vectors.len();
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| ((i + 1)..k).map(move |j| (i, j)))
        .collect();
    let combos = (p as u128)
        .checked_pow(pairs.len() as u32)
        .unwrap_or(u128::MAX);
    if combos > 1_000_000 {
        return Err(crate::Error::BoundExceeded(format!(
            "{combos} coefficient assignments is above the oracle bound"
        )));
    }
    let values: Vec<Vec<u64>> = pairs
        .iter()
        .map(|&(i, j)| sys.beta(&vectors[i], &vectors[j]))
        .collect::<Result<_>>()?;
    let mut alpha = vec![0u64; pairs.len()];
    loop {
        let mut sum = vec![0u64; sys.dim_w()];
        for (&a, val) in alpha.iter().zip(&values) {
            f.vec_add_scaled(&mut sum, a, val);
        }
        if is_zero_vec(&sum) {
            let ok = alpha
                .iter()
                .zip(&values)
                .all(|(&a, val)| a == 0 || is_zero_vec(val));
            if !ok {
                return Ok(false);
            }
        }
        // advance the coefficient odometer
        let mut i = pairs.len();
        let done = loop {
            if i == 0 {
                break true;
            }
            i -= 1;
            if alpha[i] + 1 < p {
                alpha[i] += 1;
                for x in &mut alpha[i + 1..] {
                    *x = 0;
                }
                break false;
            }
        };
        if done {
            return Ok(true);
        }
    }
}

/// Brute-force centralizer of `g` at image level: all images whose lifts
/// commute with `g` under the word oracle.
pub fn brute_centralizer_images(group: &MeklerGroup, g: &MeklerElement) -> Result<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    for w in group.enumerate_images()? {
        let h = group.from_image(&w)?;
        if words_commute(group, g, &h) {
            out.push(w);
        }
    }
    Ok(out)
}

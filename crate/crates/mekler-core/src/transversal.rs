//! Independence over definable baselines, transversal computation, unique
//! normal forms relative to a full transversal, and the quantifier-free
//! transversal predicates.
//!
//! A transversal is `X = X^ν ∪ X^p ∪ X^ι` where `X^ν` is a maximal set of
//! type-`1^ν` elements independent over the centre, `X^p` extends it
//! maximally by type-`p` elements independent over `⟨Z, E^ν⟩`, and `X^ι`
//! extends further by type-`1^ι` elements; a full transversal appends a
//! maximal `X^ζ ⊆ Z` independent over `⟨E^ν, E^p, E^ι⟩`. In the finite free
//! group the type-`1^ν` images already span `V` and the commutators span
//! `Z`, so `X^p`, `X^ι` and `X^ζ` always come back empty — the computation
//! still runs the greedy search (or certifies emptiness by a rank argument
//! when the candidate space is too large to scan) rather than assuming it.
//!
//! Independence of a tuple over a baseline is linear independence of the
//! `π`-images (or `ρ`-images, for central tuples) modulo the baseline
//! subspace; in exponent-`p` class-2 groups this matches the term-based
//! definition, which the word oracle spot-checks on tiny instances.

use serde::Serialize;

use crate::classify::{type_of_image, ElementType};
use crate::fp::is_zero_vec;
use crate::group::{GroupOrder, MeklerElement, MeklerGroup};
use crate::linalg;
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Baselines and independence
// ---------------------------------------------------------------------------

/// The subspace a tuple is tested against.
#[derive(Debug, Clone)]
pub enum Baseline {
    /// The centre `Z`: plain linear independence of the `π`-images.
    Center,
    /// `⟨Z, E^ν⟩`: modulo the span of all type-`1^ν` images.
    CenterAndNu,
    /// `⟨Z, E^ν, E^p⟩`: modulo the span of type-`1^ν` and type-`p` images.
    CenterNuP,
    /// `⟨E^ν, E^p, E^ι⟩ ∩ Z`: for central tuples, modulo the span of
    /// commutator values in `W`.
    WithinCenter,
    /// A custom subspace of `V`, given by spanning vectors.
    CustomV(Vec<Vec<u64>>),
    /// A custom subspace of `W`, given by spanning vectors.
    CustomW(Vec<Vec<u64>>),
}

fn one_nu_span(group: &MeklerGroup) -> Result<Vec<Vec<u64>>> {
    let n = group.generator_count();
    let mut span = Vec::with_capacity(n);
    for a in 0..n {
        let img = group.generator(a).gen().to_vec();
        match type_of_image(group, &img)? {
            ElementType::OneNu => span.push(img),
            other => {
                return Err(Error::Internal(format!(
                    "generator {a} classifies as {:?}, not 1^ν",
                    other.tag()
                )))
            }
        }
    }
    Ok(span)
}

fn type_p_extension(group: &MeklerGroup, mut span: Vec<Vec<u64>>) -> Result<Vec<Vec<u64>>> {
    if linalg::rank(group.field(), &span) == group.generator_count() {
        return Ok(span); // already the whole of V; nothing can extend
    }
    for v in group.enumerate_images()? {
        if matches!(type_of_image(group, &v)?, ElementType::TypeP { .. })
            && linalg::independent_mod(group.field(), &span, std::slice::from_ref(&v))
        {
            span.push(v);
        }
    }
    Ok(span)
}

/// The `W`-span of the commutator values, i.e. the derived subgroup inside
/// `Z`. In the free construction this is all of `W`.
pub fn commutator_span(group: &MeklerGroup) -> Result<Vec<Vec<u64>>> {
    let n = group.generator_count();
    let mut vals = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let c = group.commutator(&group.generator(i), &group.generator(j))?;
            if !is_zero_vec(c.com()) {
                vals.push(c.com().to_vec());
            }
        }
    }
    Ok(vals)
}

/// Tests whether `tuple` is independent over the baseline: no nontrivial
/// product of tuple powers lands in the subgroup the baseline describes.
/// Decided by rank over `F_p` on `π`-images (or `ρ`-images for the
/// within-centre case).
pub fn independent_over(
    group: &MeklerGroup,
    tuple: &[MeklerElement],
    baseline: &Baseline,
) -> Result<bool> {
    let f = group.field();
    match baseline {
        Baseline::Center => {
            let images: Vec<Vec<u64>> = tuple.iter().map(|g| g.gen().to_vec()).collect();
            Ok(linalg::independent_mod(f, &[], &images))
        }
        Baseline::CenterAndNu => {
            let span = one_nu_span(group)?;
            let images: Vec<Vec<u64>> = tuple.iter().map(|g| g.gen().to_vec()).collect();
            Ok(linalg::independent_mod(f, &span, &images))
        }
        Baseline::CenterNuP => {
            let span = type_p_extension(group, one_nu_span(group)?)?;
            let images: Vec<Vec<u64>> = tuple.iter().map(|g| g.gen().to_vec()).collect();
            Ok(linalg::independent_mod(f, &span, &images))
        }
        Baseline::WithinCenter => {
            let span = commutator_span(group)?;
            let images: Vec<Vec<u64>> = tuple.iter().map(|g| group.center_part(g)).collect();
            Ok(linalg::independent_mod(f, &span, &images))
        }
        Baseline::CustomV(span) => {
            for v in span {
                if v.len() != group.generator_count() {
                    return Err(Error::DimensionMismatch(
                        "custom V baseline has wrong vector length".into(),
                    ));
                }
            }
            let images: Vec<Vec<u64>> = tuple.iter().map(|g| g.gen().to_vec()).collect();
            Ok(linalg::independent_mod(f, span, &images))
        }
        Baseline::CustomW(span) => {
            for w in span {
                if w.len() != group.center_dim() {
                    return Err(Error::DimensionMismatch(
                        "custom W baseline has wrong vector length".into(),
                    ));
                }
            }
            let images: Vec<Vec<u64>> = tuple.iter().map(|g| group.center_part(g)).collect();
            Ok(linalg::independent_mod(f, span, &images))
        }
    }
}

// ---------------------------------------------------------------------------
// Transversals
// ---------------------------------------------------------------------------

/// How the emptiness of a transversal part was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExhaustionEvidence {
    /// The literal greedy scan over all candidate images found nothing.
    GreedyScan,
    /// The baseline already spans the whole ambient space, so no candidate
    /// could be independent over it.
    RankCertificate,
}

/// Maximality attestations recorded with a computed transversal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Attestations {
    /// `X^ν` images span the span of all type-`1^ν` images.
    pub x_nu_maximal: bool,
    /// Evidence that no type-`p` element extends the transversal
    /// (`None` when `x_p` is nonempty).
    pub x_p_empty_via: Option<ExhaustionEvidence>,
    pub x_iota_empty_via: Option<ExhaustionEvidence>,
    /// Present only for full transversals.
    pub x_zeta_empty_via: Option<ExhaustionEvidence>,
}

/// A computed (full) transversal: the witnesses `X^ν, X^p, X^ι, X^ζ`.
#[derive(Debug, Clone)]
pub struct Transversal {
    pub x_nu: Vec<MeklerElement>,
    pub x_p: Vec<MeklerElement>,
    pub x_iota: Vec<MeklerElement>,
    pub x_zeta: Vec<MeklerElement>,
    pub attestations: Attestations,
}

/// JSON form: element text literals plus the attestations.
#[derive(Debug, Clone, Serialize)]
pub struct TransversalSchema {
    pub x_nu: Vec<String>,
    pub x_p: Vec<String>,
    pub x_iota: Vec<String>,
    pub x_zeta: Vec<String>,
    pub attestations: Attestations,
}

impl Transversal {
    pub fn members(&self) -> impl Iterator<Item = &MeklerElement> {
        self.x_nu.iter().chain(&self.x_p).chain(&self.x_iota)
    }

    /// `|⟨X ∪ Z⟩| = p^(|X^ν| + |X^p| + |X^ι| + dim Z)` with
    /// `dim Z = #non-edges + |X^ζ|`.
    pub fn spanned_order(&self, group: &MeklerGroup) -> GroupOrder {
        GroupOrder {
            base: group.p(),
            exponent: self.x_nu.len()
                + self.x_p.len()
                + self.x_iota.len()
                + group.center_dim()
                + self.x_zeta.len(),
        }
    }

    pub fn to_schema(&self) -> TransversalSchema {
        let text = |v: &[MeklerElement]| v.iter().map(|g| g.to_string()).collect();
        TransversalSchema {
            x_nu: text(&self.x_nu),
            x_p: text(&self.x_p),
            x_iota: text(&self.x_iota),
            x_zeta: text(&self.x_zeta),
            attestations: self.attestations.clone(),
        }
    }
}

/// Greedy scan for transversal parts beyond `X^ν`: walk all images in
/// lexicographic order, keep those of the wanted type that stay independent
/// over the baseline. Falls back to the rank certificate when the image
/// space is above the enumeration cap but the baseline already spans `V`.
fn greedy_extend(
    group: &MeklerGroup,
    baseline: &mut Vec<Vec<u64>>,
    want_type_p: bool,
) -> Result<(Vec<MeklerElement>, Option<ExhaustionEvidence>)> {
    let f = group.field();
    let saturated = linalg::rank(f, baseline) == group.generator_count();
    let images = match group.enumerate_images() {
        Ok(iter) => iter,
        Err(Error::CapExceeded { .. }) if saturated => {
            return Ok((Vec::new(), Some(ExhaustionEvidence::RankCertificate)))
        }
        Err(e) => return Err(e),
    };
    let mut found = Vec::new();
    for v in images {
        let matches_type = match type_of_image(group, &v)? {
            ElementType::TypeP { .. } => want_type_p,
            ElementType::OneIota => !want_type_p,
            _ => false,
        };
        if matches_type && linalg::independent_mod(f, baseline, std::slice::from_ref(&v)) {
            baseline.push(v.clone());
            found.push(group.from_image(&v)?);
        }
    }
    let evidence = if found.is_empty() {
        Some(ExhaustionEvidence::GreedyScan)
    } else {
        None
    };
    Ok((found, evidence))
}

/// Computes a transversal `X^ν X^p X^ι` greedily in vertex order, then
/// coordinate-lexicographic order for the later parts.
pub fn compute_transversal(group: &MeklerGroup) -> Result<Transversal> {
    let f = group.field();
    // one representative per generator class, in vertex order
    let mut x_nu = Vec::new();
    let mut span: Vec<Vec<u64>> = Vec::new();
    for a in 0..group.generator_count() {
        let gen = group.generator(a);
        if !matches!(type_of_image(group, gen.gen())?, ElementType::OneNu) {
            return Err(Error::Internal(format!(
                "generator {a} does not classify as 1^ν"
            )));
        }
        if linalg::independent_mod(f, &span, &[gen.gen().to_vec()]) {
            span.push(gen.gen().to_vec());
            x_nu.push(gen);
        }
    }
    let one_nu = one_nu_span(group)?;
    let x_nu_maximal = linalg::rank(f, &span) == linalg::rank(f, &one_nu);

    let (x_p, x_p_empty_via) = greedy_extend(group, &mut span, true)?;
    let (x_iota, x_iota_empty_via) = greedy_extend(group, &mut span, false)?;

    Ok(Transversal {
        x_nu,
        x_p,
        x_iota,
        x_zeta: Vec::new(),
        attestations: Attestations {
            x_nu_maximal,
            x_p_empty_via,
            x_iota_empty_via,
            x_zeta_empty_via: None,
        },
    })
}

/// Computes a full transversal: a transversal plus a maximal central part
/// `X^ζ` independent over the commutator span.
pub fn compute_full_transversal(group: &MeklerGroup) -> Result<Transversal> {
    let mut t = compute_transversal(group)?;
    let f = group.field();
    let mut w_span = commutator_span(group)?;
    let saturated = linalg::rank(f, &w_span) == group.center_dim();

    let mut scan_central = || -> Result<(Vec<MeklerElement>, Option<ExhaustionEvidence>)> {
        let k = group.center_dim();
        let mut count: u128 = 1;
        for _ in 0..k {
            count = count.saturating_mul(group.p() as u128);
        }
        if count > group.enumeration_cap() {
            if saturated {
                return Ok((Vec::new(), Some(ExhaustionEvidence::RankCertificate)));
            }
            return Err(Error::CapExceeded {
                required: count,
                cap: group.enumeration_cap(),
            });
        }
        let mut found = Vec::new();
        let p = group.p();
        let mut w = vec![0u64; k];
        loop {
            if !is_zero_vec(&w) && linalg::independent_mod(f, &w_span, &[w.clone()]) {
                w_span.push(w.clone());
                found.push(group.central_element(w.clone())?);
            }
            let mut i = k;
            let done = loop {
                if i == 0 {
                    break true;
                }
                i -= 1;
                if w[i] + 1 < p {
                    w[i] += 1;
                    for x in &mut w[i + 1..] {
                        *x = 0;
                    }
                    break false;
                }
            };
            if done {
                break;
            }
        }
        let evidence = if found.is_empty() {
            Some(ExhaustionEvidence::GreedyScan)
        } else {
            None
        };
        Ok((found, evidence))
    };

    let (x_zeta, x_zeta_empty_via) = scan_central()?;
    t.x_zeta = x_zeta;
    t.attestations.x_zeta_empty_via = x_zeta_empty_via;
    Ok(t)
}

// ---------------------------------------------------------------------------
// Normal forms relative to a full transversal
// ---------------------------------------------------------------------------

/// Exponent record of `g = Π x^{n_x} · Π [x, y]^{n_{x,y}} · Π z^{n_z}`
/// relative to a full transversal, under the fixed member and pair orders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalForm {
    /// One exponent per transversal member, in `x_nu ++ x_p ++ x_iota` order.
    pub member_exponents: Vec<u64>,
    /// Exponents on the pairs `(i, j)`, `i < j`, of transversal members with
    /// nontrivial commutator, in lexicographic pair order.
    pub pair_exponents: Vec<((usize, usize), u64)>,
    /// One exponent per `X^ζ` member.
    pub zeta_exponents: Vec<u64>,
}

/// Decomposes `g` over the full transversal `t`. The exponents are unique:
/// the member images form a basis of `V` and the nontrivial pairwise
/// commutators are linearly independent in `W`.
pub fn normal_form_wrt(
    group: &MeklerGroup,
    g: &MeklerElement,
    t: &Transversal,
) -> Result<NormalForm> {
    let f = group.field();
    let members: Vec<&MeklerElement> = t.members().collect();

    // member exponents: solve the images for π(g)
    let images: Vec<Vec<u64>> = members.iter().map(|m| m.gen().to_vec()).collect();
    let columns: Vec<Vec<u64>> = (0..group.generator_count())
        .map(|r| images.iter().map(|img| img[r]).collect())
        .collect();
    let member_exponents = linalg::solve(f, &columns, g.gen())
        .ok_or_else(|| Error::Internal("transversal does not span the image".into()))?;

    // peel the member part off; the rest must be central
    let mut prod = group.identity();
    for (m, &e) in members.iter().zip(&member_exponents) {
        prod = group.multiply(&prod, &group.power(m, e as i64)?)?;
    }
    let rest = group.multiply(&group.inverse(&prod)?, g)?;
    if !group.is_central(&rest) {
        return Err(Error::Internal(
            "member part did not absorb the image".into(),
        ));
    }

    // pairs with nontrivial commutator, in lexicographic order
    let mut pair_ids = Vec::new();
    let mut pair_values = Vec::new();
    for i in 0..members.len() {
        for j in (i + 1)..members.len() {
            let c = group.commutator(members[i], members[j])?;
            if !is_zero_vec(c.com()) {
                pair_ids.push((i, j));
                pair_values.push(c.com().to_vec());
            }
        }
    }
    let mut w_basis = pair_values.clone();
    for z in &t.x_zeta {
        w_basis.push(group.center_part(z));
    }
    if linalg::rank(f, &w_basis) != w_basis.len() {
        return Err(Error::Internal(
            "commutator values of the transversal are not independent".into(),
        ));
    }
    let w_columns: Vec<Vec<u64>> = (0..group.center_dim())
        .map(|r| w_basis.iter().map(|val| val[r]).collect())
        .collect();
    let coeffs = linalg::solve(f, &w_columns, rest.com())
        .ok_or_else(|| Error::Internal("central part outside the commutator span".into()))?;
    let (pair_part, zeta_part) = coeffs.split_at(pair_ids.len());

    Ok(NormalForm {
        member_exponents,
        pair_exponents: pair_ids
            .into_iter()
            .zip(pair_part.iter().copied())
            .collect(),
        zeta_exponents: zeta_part.to_vec(),
    })
}

/// Rebuilds the element a normal form describes, through group operations.
pub fn recompose(group: &MeklerGroup, t: &Transversal, nf: &NormalForm) -> Result<MeklerElement> {
    let members: Vec<&MeklerElement> = t.members().collect();
    if nf.member_exponents.len() != members.len() || nf.zeta_exponents.len() != t.x_zeta.len() {
        return Err(Error::DimensionMismatch(
            "normal form does not match the transversal shape".into(),
        ));
    }
    let mut out = group.identity();
    for (m, &e) in members.iter().zip(&nf.member_exponents) {
        out = group.multiply(&out, &group.power(m, e as i64)?)?;
    }
    for &((i, j), e) in &nf.pair_exponents {
        let c = group.commutator(members[i], members[j])?;
        out = group.multiply(&out, &group.power(&c, e as i64)?)?;
    }
    for (z, &e) in t.x_zeta.iter().zip(&nf.zeta_exponents) {
        out = group.multiply(&out, &group.power(z, e as i64)?)?;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Quantifier-free transversal predicates
// ---------------------------------------------------------------------------

/// Result of checking the quantifier-free predicate families that make a
/// tuple extendable to a transversal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QfCheckReport {
    pub pass: bool,
    pub x_nu_products_checked: u64,
    pub x_p_products_checked: u64,
    pub x_iota_products_checked: u64,
    pub violations: Vec<String>,
}

/// Verifies the predicate families from the transversal definability lemma:
/// every nontrivial power-product of `X^ν` members stays outside the centre
/// (independence over `Z`), no nontrivial power-product of `X^p` members
/// lies in any `A_{n,0}`, and no nontrivial power-product of `X^ι` members
/// lies in any `A_{n,m}`. In the finite group any nonzero image lies in
/// `A_{|support|, 0}`, so the latter two families force `X^p` and `X^ι` to
/// be empty and hold vacuously exactly then.
pub fn transversal_qf_check(group: &MeklerGroup, t: &Transversal) -> Result<QfCheckReport> {
    let f = group.field();
    let mut violations = Vec::new();

    let mut scan_products =
        |members: &[MeklerElement], label: &str, forbid_any_nonzero: bool| -> Result<u64> {
            let l = members.len();
            if l == 0 {
                return Ok(0);
            }
            let mut checked = 0u64;
            let p = group.p();
            let mut exps = vec![0u64; l];
            loop {
                // advance odometer, skipping the all-zero tuple
                let mut i = l;
                let done = loop {
                    if i == 0 {
                        break true;
                    }
                    i -= 1;
                    if exps[i] + 1 < p {
                        exps[i] += 1;
                        for x in &mut exps[i + 1..] {
                            *x = 0;
                        }
                        break false;
                    }
                };
                if done {
                    break;
                }
                checked += 1;
                let mut image = vec![0u64; group.generator_count()];
                for (m, &e) in members.iter().zip(&exps) {
                    f.vec_add_scaled(&mut image, e, m.gen());
                }
                if forbid_any_nonzero {
                    // independence over Z: the product must stay non-central
                    if is_zero_vec(&image) {
                        violations.push(format!(
                            "{label}: exponents {exps:?} give a central product"
                        ));
                    }
                } else {
                    // ¬A_{n,·} for all n fails as soon as the product exists
                    let supp = image.iter().filter(|&&x| x != 0).count();
                    violations.push(format!(
                        "{label}: exponents {exps:?} give a product lying in A_{{{supp},0}}"
                    ));
                }
            }
            Ok(checked)
        };

    let x_nu_products_checked = scan_products(&t.x_nu, "x_nu", true)?;
    let x_p_products_checked = scan_products(&t.x_p, "x_p", false)?;
    let x_iota_products_checked = scan_products(&t.x_iota, "x_iota", false)?;

    Ok(QfCheckReport {
        pass: violations.is_empty(),
        x_nu_products_checked,
        x_p_products_checked,
        x_iota_products_checked,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_cycle, make_petersen};

    fn c5_group() -> MeklerGroup {
        MeklerGroup::build(make_cycle(5).unwrap(), 3).unwrap()
    }

    #[test]
    fn generator_pairs_are_independent_over_center() {
        let g = c5_group();
        let tuple = vec![g.generator(0), g.generator(1)];
        assert!(independent_over(&g, &tuple, &Baseline::Center).unwrap());
        // proportional images are dependent
        let z = g.central_element(vec![1, 0, 0, 0, 0]).unwrap();
        let x0sq_z = g
            .multiply(&g.power(&g.generator(0), 2).unwrap(), &z)
            .unwrap();
        let dep = vec![g.generator(0), x0sq_z];
        assert!(!independent_over(&g, &dep, &Baseline::Center).unwrap());
    }

    #[test]
    fn nothing_is_independent_over_the_one_nu_span() {
        let g = c5_group();
        let prod = g.multiply(&g.generator(0), &g.generator(2)).unwrap();
        assert!(!independent_over(&g, &[prod], &Baseline::CenterAndNu).unwrap());
        let x134 = {
            let a = g.multiply(&g.generator(1), &g.generator(3)).unwrap();
            g.multiply(&a, &g.generator(4)).unwrap()
        };
        assert!(!independent_over(&g, &[x134], &Baseline::CenterNuP).unwrap());
    }

    #[test]
    fn central_elements_are_dependent_over_commutator_span() {
        let g = c5_group();
        let z = g.central_element(vec![1, 2, 0, 0, 1]).unwrap();
        assert!(!independent_over(&g, &[z], &Baseline::WithinCenter).unwrap());
    }

    #[test]
    fn custom_baselines_validate_dimensions() {
        let g = c5_group();
        let bad = Baseline::CustomV(vec![vec![1, 0]]);
        assert!(independent_over(&g, &[g.generator(0)], &bad).is_err());
        let ok = Baseline::CustomV(vec![vec![0, 1, 0, 0, 0]]);
        assert!(independent_over(&g, &[g.generator(0)], &ok).unwrap());
    }

    #[test]
    fn c5_transversal_is_the_generators() {
        let g = c5_group();
        let t = compute_full_transversal(&g).unwrap();
        assert_eq!(t.x_nu.len(), 5);
        for (i, m) in t.x_nu.iter().enumerate() {
            assert_eq!(m, &g.generator(i));
        }
        assert!(t.x_p.is_empty());
        assert!(t.x_iota.is_empty());
        assert!(t.x_zeta.is_empty());
        assert!(t.attestations.x_nu_maximal);
        assert_eq!(
            t.attestations.x_p_empty_via,
            Some(ExhaustionEvidence::GreedyScan)
        );
        assert_eq!(
            t.attestations.x_zeta_empty_via,
            Some(ExhaustionEvidence::GreedyScan)
        );
        assert_eq!(t.spanned_order(&g), g.order());
    }

    #[test]
    fn c6_transversal_size() {
        let g = MeklerGroup::build(make_cycle(6).unwrap(), 3).unwrap();
        let t = compute_full_transversal(&g).unwrap();
        assert_eq!(t.x_nu.len(), 6);
        assert!(t.x_p.is_empty() && t.x_iota.is_empty() && t.x_zeta.is_empty());
        assert_eq!(t.spanned_order(&g), g.order());
    }

    #[test]
    fn petersen_transversal_uses_rank_certificate_for_zeta() {
        // 3^30 central vectors cannot be scanned; the commutator span rank
        // certificate takes over
        let g = MeklerGroup::build(make_petersen(), 3).unwrap();
        let t = compute_full_transversal(&g).unwrap();
        assert_eq!(t.x_nu.len(), 10);
        assert_eq!(
            t.attestations.x_zeta_empty_via,
            Some(ExhaustionEvidence::RankCertificate)
        );
        assert_eq!(t.spanned_order(&g), g.order());
    }

    #[test]
    fn normal_form_round_trip_on_samples() {
        let g = c5_group();
        let t = compute_full_transversal(&g).unwrap();
        // identity: all exponents zero
        let nf = normal_form_wrt(&g, &g.identity(), &t).unwrap();
        assert!(nf.member_exponents.iter().all(|&e| e == 0));
        assert!(nf.pair_exponents.iter().all(|&(_, e)| e == 0));

        // commutator of a non-edge: a single pair exponent
        let c = g.commutator(&g.generator(0), &g.generator(2)).unwrap();
        let nf = normal_form_wrt(&g, &c, &t).unwrap();
        assert!(nf.member_exponents.iter().all(|&e| e == 0));
        let nonzero: Vec<_> = nf.pair_exponents.iter().filter(|&&(_, e)| e != 0).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!(nonzero[0].0, (0, 2));
        assert!(nonzero[0].1 == 1 || nonzero[0].1 == 2);
        assert_eq!(recompose(&g, &t, &nf).unwrap(), c);

        // a messy element
        let h = g.element(vec![2, 0, 1, 1, 0], vec![1, 2, 0, 1, 2]).unwrap();
        let nf = normal_form_wrt(&g, &h, &t).unwrap();
        assert_eq!(recompose(&g, &t, &nf).unwrap(), h);
    }

    #[test]
    fn qf_check_passes_for_computed_transversal() {
        let g = c5_group();
        let t = compute_full_transversal(&g).unwrap();
        let report = transversal_qf_check(&g, &t).unwrap();
        assert!(report.pass, "violations: {:?}", report.violations);
        assert_eq!(report.x_nu_products_checked, 3u64.pow(5) - 1);
        assert_eq!(report.x_p_products_checked, 0);
    }

    #[test]
    fn qf_check_flags_duplicated_member() {
        let g = c5_group();
        let mut t = compute_full_transversal(&g).unwrap();
        t.x_nu.push(g.generator(0)); // duplicate: dependence is witnessed
        let report = transversal_qf_check(&g, &t).unwrap();
        assert!(!report.pass);
        assert!(report.violations[0].contains("central product"));
    }

    #[test]
    fn qf_check_flags_fake_x_p_member() {
        let g = c5_group();
        let mut t = compute_full_transversal(&g).unwrap();
        let prod = g.multiply(&g.generator(0), &g.generator(2)).unwrap();
        t.x_p.push(prod);
        let report = transversal_qf_check(&g, &t).unwrap();
        assert!(!report.pass);
        assert!(report.violations.iter().any(|v| v.contains("A_{2,0}")));
    }
}

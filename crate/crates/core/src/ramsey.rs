//! Ramsey orderings of orbits, the join `β ∨ γ`, and exhaustive checks of
//! the monotonicity conditions.
//!
//! For orbits of weight `n`, the witness set `X_α` is a representative of
//! `α` padded with `N - n` copies of the least block `b1.1`. An ordering is
//! Ramsey when every `X_α` contains an `n`-set in `α` and none in any later
//! orbit.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::blocks::OrbitKey;
use crate::error::{Error, Result};
use crate::models::{GroupKind, GroupModel};
use crate::shuffle::greatest_shuffle;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamseyOrdering {
    pub weight: u32,
    /// Size `N` of the witness sets.
    pub pad_to: u32,
    /// Orbits of weight `weight`, ascending.
    pub orbits: Vec<OrbitKey>,
    /// Orbit of `X_α` for each `α`.
    pub padded: BTreeMap<OrbitKey, OrbitKey>,
}

impl RamseyOrdering {
    pub fn position(&self, key: &OrbitKey) -> Option<usize> {
        self.orbits.iter().position(|k| k == key)
    }
}

impl fmt::Display for RamseyOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, k) in self.orbits.iter().enumerate() {
            writeln!(f, "{i}\t{k}\t{}", self.padded[k])?;
        }
        Ok(())
    }
}

/// The construction: orbits in the model's order, `X_α = α` padded with
/// `b1.1`.
pub fn ramsey_ordering(model: &GroupModel, n: u32, pad_to: u32) -> Result<RamseyOrdering> {
    if pad_to < n {
        return Err(Error::InvalidParameter(format!(
            "witness size {pad_to} is below the orbit weight {n}"
        )));
    }
    let orbits = model.orbits_of_weight(n)?;
    let padded = orbits
        .iter()
        .map(|a| Ok((a.clone(), model.pad(a, (pad_to - n) as usize)?)))
        .collect::<Result<_>>()?;
    Ok(RamseyOrdering {
        weight: n,
        pad_to,
        orbits,
        padded,
    })
}

/// A witness `X_α` containing an `n`-set in a later orbit `β`, or missing
/// `α` itself (`later == None`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamseyViolation {
    pub alpha: OrbitKey,
    pub later: Option<OrbitKey>,
    pub suborbits: BTreeMap<OrbitKey, BigInt>,
}

impl fmt::Display for RamseyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.later {
            Some(b) => write!(f, "X_{} contains later orbit {}", self.alpha, b)?,
            None => write!(f, "X_{} does not contain {}", self.alpha, self.alpha)?,
        }
        let table: Vec<String> = self
            .suborbits
            .iter()
            .map(|(k, c)| format!("{k}:{c}"))
            .collect();
        write!(f, " [suborbits {}]", table.join(" "))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RamseyReport {
    pub violations: Vec<RamseyViolation>,
}

impl RamseyReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the Ramsey property of `ordering` (in its own listed order).
pub fn verify_ramsey_property(
    ordering: &RamseyOrdering,
    model: &GroupModel,
) -> Result<RamseyReport> {
    let n = ordering.weight;
    let found: Vec<Result<Vec<RamseyViolation>>> = ordering
        .orbits
        .par_iter()
        .enumerate()
        .map(|(i, alpha)| {
            let x = ordering
                .padded
                .get(alpha)
                .ok_or_else(|| Error::InvalidParameter(format!("no witness for {alpha}")))?;
            let counts = model.suborbit_counts(x, n)?;
            let mut out = Vec::new();
            if !counts.get(alpha).is_some_and(|c| c.is_positive()) {
                out.push(RamseyViolation {
                    alpha: alpha.clone(),
                    later: None,
                    suborbits: counts.clone(),
                });
            }
            for beta in &ordering.orbits[i + 1..] {
                if counts.get(beta).is_some_and(|c| c.is_positive()) {
                    out.push(RamseyViolation {
                        alpha: alpha.clone(),
                        later: Some(beta.clone()),
                        suborbits: counts.clone(),
                    });
                }
            }
            Ok(out)
        })
        .collect();
    let mut report = RamseyReport::default();
    for r in found {
        report.violations.extend(r?);
    }
    Ok(report)
}

/// An ordering on `m`-orbits induced by an ordering on `n`-orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedOrdering {
    /// The `m`-orbits listed by first appearance, with witnesses
    /// `X_{β_d}`.
    pub ordering: RamseyOrdering,
    /// `β_d`: the first `α` whose witness contains an `m`-set in `d`.
    pub first_appearance: BTreeMap<OrbitKey, OrbitKey>,
}

/// Lists `m`-orbits `d` by `β_d = min{α : X_α contains an m-set in d}`.
pub fn induced_ordering(
    ordering: &RamseyOrdering,
    model: &GroupModel,
    m: u32,
) -> Result<InducedOrdering> {
    let n = ordering.weight;
    if m > n {
        return Err(Error::InvalidParameter(format!(
            "cannot induce weight {m} from weight {n}"
        )));
    }
    if m == n {
        let first_appearance = ordering
            .orbits
            .iter()
            .map(|k| (k.clone(), k.clone()))
            .collect();
        return Ok(InducedOrdering {
            ordering: ordering.clone(),
            first_appearance,
        });
    }
    if ordering.pad_to < m + n {
        return Err(Error::InvalidParameter(format!(
            "witness size {} is below {m} + {n}",
            ordering.pad_to
        )));
    }
    let mut first: BTreeMap<OrbitKey, usize> = BTreeMap::new();
    for (i, alpha) in ordering.orbits.iter().enumerate() {
        for (d, c) in model.suborbit_counts(&ordering.padded[alpha], m)? {
            if c.is_positive() {
                first.entry(d).or_insert(i);
            }
        }
    }
    let all = model.orbits_of_weight(m)?;
    if let Some(d) = all.iter().find(|d| !first.contains_key(d)) {
        return Err(Error::InvalidParameter(format!(
            "orbit {d} never appears in a witness set"
        )));
    }
    let mut by_alpha: BTreeMap<usize, OrbitKey> = BTreeMap::new();
    for (d, i) in &first {
        if let Some(prev) = by_alpha.insert(*i, d.clone()) {
            return Err(Error::NotInjective(prev.to_string(), d.to_string()));
        }
    }
    let orbits: Vec<OrbitKey> = by_alpha.into_values().collect();
    let padded = orbits
        .iter()
        .map(|d| {
            (
                d.clone(),
                ordering.padded[&ordering.orbits[first[d]]].clone(),
            )
        })
        .collect();
    let first_appearance = first
        .iter()
        .map(|(d, i)| (d.clone(), ordering.orbits[*i].clone()))
        .collect();
    Ok(InducedOrdering {
        ordering: RamseyOrdering {
            weight: m,
            pad_to: ordering.pad_to,
            orbits,
            padded,
        },
        first_appearance,
    })
}

/// `β ∨ γ` in closed form: the multiset sum (unordered case) or the
/// greatest shuffle (ordered case).
pub fn join(beta: &OrbitKey, gamma: &OrbitKey, model: &GroupModel) -> Result<OrbitKey> {
    model.check_key(beta)?;
    model.check_key(gamma)?;
    Ok(match model.kind() {
        GroupKind::WreathS => OrbitKey::Multiset(beta.content().sum(&gamma.content())),
        GroupKind::WreathA => OrbitKey::Word(greatest_shuffle(
            beta.as_word().expect("ordered"),
            gamma.as_word().expect("ordered"),
        )),
    })
}

/// `β ∨ γ` by definition: the least orbit with a positive structure
/// constant `c^α_{β,γ}`.
pub fn join_by_search(
    beta: &OrbitKey,
    gamma: &OrbitKey,
    model: &GroupModel,
) -> Result<Option<OrbitKey>> {
    let orbits = model.orbits_of_weight(beta.weight() + gamma.weight())?;
    Ok(orbits
        .into_iter()
        .find(|a| model.structure_constant(a, beta, gamma).is_positive()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionResult {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub counterexamples: Vec<String>,
}

impl fmt::Display for ConditionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict}\t{}\t{} checked", self.name, self.checked)?;
        for c in &self.counterexamples {
            write!(f, "\n\tcounterexample: {c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub m: u32,
    pub n: u32,
    pub pad_to: u32,
    pub conditions: Vec<ConditionResult>,
}

impl ConjectureReport {
    pub fn holds(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }
}

impl fmt::Display for ConjectureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.conditions {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

const MAX_COUNTEREXAMPLES: usize = 5;

fn condition(name: impl Into<String>, checked: usize, failures: Vec<String>) -> ConditionResult {
    ConditionResult {
        name: name.into(),
        passed: failures.is_empty(),
        checked,
        counterexamples: failures.into_iter().take(MAX_COUNTEREXAMPLES).collect(),
    }
}

/// Checks, at weights `m` and `n` with witnesses of size `pad_to`
/// (default `2(m+n)`):
///
/// - the constructed ordering on `(m+n)`-orbits is Ramsey;
/// - it induces the constructed orderings on `m`- and `n`-orbits;
/// - the closed-form join equals the least orbit with a decomposition;
/// - `β < β'` implies `β∨γ < β'∨γ`, and `γ < γ'` implies `β∨γ < β∨γ'`;
/// - `β∨γ ≤ β'∨γ'` implies `β < β'`, `γ < γ'` or equality.
pub fn verify_conjecture_conditions(
    model: &GroupModel,
    m: u32,
    n: u32,
    pad_to: Option<u32>,
) -> Result<ConjectureReport> {
    let total = m + n;
    let pad_to = pad_to.unwrap_or(2 * total);
    if pad_to < 2 * total {
        return Err(Error::InvalidParameter(format!(
            "witness size {pad_to} is below 2(m+n) = {}",
            2 * total
        )));
    }
    let mut conditions = Vec::new();

    let big = ramsey_ordering(model, total, pad_to)?;
    let report = verify_ramsey_property(&big, model)?;
    conditions.push(condition(
        format!("ramsey ordering at weight {total}, N={pad_to}"),
        big.orbits.len(),
        report.violations.iter().map(ToString::to_string).collect(),
    ));

    for k in [m, n] {
        let induced = induced_ordering(&big, model, k);
        let direct = ramsey_ordering(model, k, pad_to)?;
        let failures = match &induced {
            Ok(ind) if ind.ordering.orbits == direct.orbits => Vec::new(),
            Ok(ind) => vec![format!(
                "induced order [{}] differs from constructed order [{}]",
                join_keys(&ind.ordering.orbits),
                join_keys(&direct.orbits)
            )],
            Err(e) => vec![e.to_string()],
        };
        conditions.push(condition(
            format!("induced ordering at weight {k}"),
            direct.orbits.len(),
            failures,
        ));
    }

    let betas = model.orbits_of_weight(m)?;
    let gammas = model.orbits_of_weight(n)?;
    let pairs: Vec<(usize, usize)> = (0..betas.len())
        .flat_map(|i| (0..gammas.len()).map(move |j| (i, j)))
        .collect();

    // joins by definition, in deterministic pair order
    let joins: Vec<Result<(OrbitKey, Option<OrbitKey>)>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            Ok((
                join(&betas[i], &gammas[j], model)?,
                join_by_search(&betas[i], &gammas[j], model)?,
            ))
        })
        .collect();
    let mut table: BTreeMap<(usize, usize), OrbitKey> = BTreeMap::new();
    let mut failures = Vec::new();
    for (&(i, j), r) in pairs.iter().zip(joins) {
        let (closed, searched) = r?;
        match searched {
            Some(s) if s == closed => {
                table.insert((i, j), s);
            }
            Some(s) => {
                failures.push(format!(
                    "{} v {}: closed form {closed}, least decomposing orbit {s}",
                    betas[i], gammas[j]
                ));
                table.insert((i, j), s);
            }
            None => failures.push(format!(
                "{} v {}: no orbit contains the decomposition",
                betas[i], gammas[j]
            )),
        }
    }
    conditions.push(condition(
        "join equals least decomposing orbit",
        pairs.len(),
        failures,
    ));
    if table.len() != pairs.len() {
        return Ok(ConjectureReport {
            m,
            n,
            pad_to,
            conditions,
        });
    }

    let lt = |a: &OrbitKey, b: &OrbitKey| model.ramsey_cmp(a, b) == Ordering::Less;
    // orbits are listed ascending, so index order is the Ramsey order
    let mut left = (Vec::new(), 0);
    for j in 0..gammas.len() {
        for i in 0..betas.len() {
            for i2 in i + 1..betas.len() {
                left.1 += 1;
                let (a, b) = (&table[&(i, j)], &table[&(i2, j)]);
                if !lt(a, b) {
                    left.0.push(format!(
                        "{} < {} but {} v {} = {a} is not below {} v {} = {b}",
                        betas[i], betas[i2], betas[i], gammas[j], betas[i2], gammas[j]
                    ));
                }
            }
        }
    }
    conditions.push(condition(
        "beta < beta' => beta v gamma < beta' v gamma",
        left.1,
        left.0,
    ));

    let mut right = (Vec::new(), 0);
    for i in 0..betas.len() {
        for j in 0..gammas.len() {
            for j2 in j + 1..gammas.len() {
                right.1 += 1;
                let (a, b) = (&table[&(i, j)], &table[&(i, j2)]);
                if !lt(a, b) {
                    right.0.push(format!(
                        "{} < {} but {} v {} = {a} is not below {} v {} = {b}",
                        gammas[j], gammas[j2], betas[i], gammas[j], betas[i], gammas[j2]
                    ));
                }
            }
        }
    }
    conditions.push(condition(
        "gamma < gamma' => beta v gamma < beta v gamma'",
        right.1,
        right.0,
    ));

    let mut mono = (Vec::new(), 0);
    for (&(i, j), a) in &table {
        for (&(i2, j2), b) in &table {
            mono.1 += 1;
            let le = model.ramsey_cmp(a, b) != Ordering::Greater;
            if le && !(i < i2 || j < j2 || (i, j) == (i2, j2)) {
                mono.0.push(format!(
                    "{} v {} = {a} <= {} v {} = {b}",
                    betas[i], gammas[j], betas[i2], gammas[j2]
                ));
            }
        }
    }
    conditions.push(condition(
        "join order implies componentwise order",
        mono.1,
        mono.0,
    ));

    Ok(ConjectureReport {
        m,
        n,
        pad_to,
        conditions,
    })
}

fn join_keys(keys: &[OrbitKey]) -> String {
    keys.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// Structure constant of the leading term of `χ_β · χ_γ`: `c^{β∨γ}_{β,γ}`.
pub fn join_constant(beta: &OrbitKey, gamma: &OrbitKey, model: &GroupModel) -> Result<BigInt> {
    let j = join(beta, gamma, model)?;
    let c = model.structure_constant(&j, beta, gamma);
    debug_assert!(!c.is_zero());
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sk2() -> GroupModel {
        GroupModel::sk_wr_a(2).unwrap()
    }

    fn key(m: &GroupModel, s: &str) -> OrbitKey {
        m.parse_key(s).unwrap()
    }

    #[test]
    fn construction_example() {
        let m = sk2();
        let o = ramsey_ordering(&m, 2, 4).unwrap();
        assert_eq!(o.orbits, vec![key(&m, "b1.1-b1.1"), key(&m, "b2.1")]);
        assert_eq!(o.padded[&key(&m, "b2.1")], key(&m, "b2.1-b1.1-b1.1"));
        // the witness for b2.1 holds no 2-set orbit above b2.1
        let counts = m.suborbit_counts(&o.padded[&key(&m, "b2.1")], 2).unwrap();
        assert!(counts
            .keys()
            .all(|k| m.ramsey_cmp(k, &key(&m, "b2.1")).is_le()));
        assert!(verify_ramsey_property(&o, &m).unwrap().holds());

        let z = ramsey_ordering(&m, 0, 3).unwrap();
        assert_eq!(z.orbits, vec![key(&m, "e")]);

        let s = GroupModel::sk_wr_s(2).unwrap();
        let o = ramsey_ordering(&s, 2, 4).unwrap();
        assert_eq!(o.orbits, vec![key(&s, "b1.1+b1.1"), key(&s, "b2.1")]);
        assert!(ramsey_ordering(&m, 3, 2).is_err());
    }

    #[test]
    fn padding_requires_weight_one_block() {
        let text = "weight 2 = 1\nb2.1 : b2.1 | e\nb2.1 : e | b2.1\n";
        let m = GroupModel::load_custom(text).unwrap();
        assert!(matches!(
            ramsey_ordering(&m, 2, 4),
            Err(Error::NoPaddingBlock)
        ));
    }

    #[test]
    fn swapped_ordering_is_caught() {
        let m = sk2();
        let mut o = ramsey_ordering(&m, 2, 4).unwrap();
        o.orbits.swap(0, 1);
        let report = verify_ramsey_property(&o, &m).unwrap();
        assert!(!report.holds());
        let v = &report.violations[0];
        assert_eq!(v.alpha, key(&m, "b2.1"));
        assert_eq!(v.later, Some(key(&m, "b1.1-b1.1")));
    }

    #[test]
    fn ramsey_property_small_weights() {
        let m = sk2();
        for n in 0..=4 {
            assert!(
                verify_ramsey_property(&ramsey_ordering(&m, n, 2 * n).unwrap(), &m)
                    .unwrap()
                    .holds()
            );
        }
        let a = GroupModel::a_wr_a(6).unwrap();
        assert!(
            verify_ramsey_property(&ramsey_ordering(&a, 3, 6).unwrap(), &a)
                .unwrap()
                .holds()
        );
    }

    #[test]
    fn induced_examples() {
        let m = sk2();
        let o3 = ramsey_ordering(&m, 3, 6).unwrap();
        let ind = induced_ordering(&o3, &m, 1).unwrap();
        assert_eq!(ind.ordering.orbits, vec![key(&m, "b1.1")]);

        let o4 = ramsey_ordering(&m, 4, 8).unwrap();
        let ind = induced_ordering(&o4, &m, 2).unwrap();
        assert_eq!(
            ind.ordering.orbits,
            vec![key(&m, "b1.1-b1.1"), key(&m, "b2.1")]
        );
        assert_eq!(
            ind.first_appearance[&key(&m, "b2.1")],
            key(&m, "b2.1-b1.1-b1.1")
        );
        assert_eq!(
            ind.ordering.orbits,
            ramsey_ordering(&m, 2, 8).unwrap().orbits
        );

        assert_eq!(induced_ordering(&o4, &m, 4).unwrap().ordering, o4);
        assert!(induced_ordering(&ramsey_ordering(&m, 4, 5).unwrap(), &m, 2).is_err());
    }

    #[test]
    fn join_examples() {
        let m = sk2();
        assert_eq!(
            join(&key(&m, "b2.1-b1.1"), &key(&m, "b1.1"), &m).unwrap(),
            key(&m, "b2.1-b1.1-b1.1")
        );
        assert_eq!(
            join(&key(&m, "b2.1-b1.1"), &key(&m, "e"), &m).unwrap(),
            key(&m, "b2.1-b1.1")
        );
        let s = GroupModel::sk_wr_s(2).unwrap();
        assert_eq!(
            join(&key(&s, "b2.1"), &key(&s, "b1.1"), &s).unwrap(),
            key(&s, "b2.1+b1.1")
        );
        assert_eq!(
            join(&key(&s, "b2.1"), &key(&s, "e"), &s).unwrap(),
            key(&s, "b2.1")
        );
        assert_eq!(
            join_by_search(&key(&m, "b2.1-b1.1"), &key(&m, "b1.1"), &m).unwrap(),
            Some(key(&m, "b2.1-b1.1-b1.1"))
        );
    }

    #[test]
    fn conjecture_examples() {
        let r = verify_conjecture_conditions(&sk2(), 2, 2, None).unwrap();
        assert!(r.holds(), "{r}");
        assert_eq!(r.pad_to, 8);
        let a = GroupModel::a_wr_a(6).unwrap();
        assert!(verify_conjecture_conditions(&a, 2, 3, None)
            .unwrap()
            .holds());
        let r = verify_conjecture_conditions(&sk2(), 0, 2, None).unwrap();
        assert!(r.holds(), "{r}");
        assert!(verify_conjecture_conditions(&sk2(), 1, 1, Some(3)).is_err());
    }
}

//! Elements of the graded algebra of a group model.
//!
//! An element is a finitely supported function from orbit keys to scalars;
//! the characteristic function of an orbit is written `χ_v`. The product of
//! `χ_v` and `χ_w` counts, for each orbit `u`, the subsets `Y` of a
//! representative of `u` with image `v` whose complement has image `w`.
//! In the ordered case this is the complete shuffle product: the ordinary
//! shuffle of `v` and `w` plus terms whose content is multiset-lex greater.
//!
//! In the ordered case the elements `S̄(w)` built from the Lyndon
//! factorization of `w` form a basis that is unitriangular against the
//! `χ_w` basis; [`AlgebraElement::to_generator_basis`] changes coordinates
//! by back substitution.
//!
//! The leading-term law checked by [`crate::verify`] is evidence at small
//! weights that products of nonzero elements are nonzero. It is not a proof.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::blocks::{OrbitKey, Word};
use crate::error::{Error, Result};
use crate::models::{GroupKind, GroupModel};
use crate::scalar::Scalar;
use crate::shuffle::lyndon_factorization;

#[derive(Clone)]
pub struct AlgebraElement<K> {
    model: Arc<GroupModel>,
    coeffs: BTreeMap<OrbitKey, K>,
}

impl<K: Scalar> fmt::Debug for AlgebraElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.coeffs.iter().map(|(k, v)| (k.to_string(), v)))
            .finish()
    }
}

impl<K: Scalar> PartialEq for AlgebraElement<K> {
    fn eq(&self, other: &Self) -> bool {
        same_model(&self.model, &other.model) && self.coeffs == other.coeffs
    }
}

fn same_model(a: &Arc<GroupModel>, b: &Arc<GroupModel>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn factorial<K: Scalar>(n: usize) -> K {
    (1..=n).fold(K::one(), |acc, i| acc * K::from_bigint(&BigInt::from(i)))
}

impl<K: Scalar> AlgebraElement<K> {
    pub fn zero(model: &Arc<GroupModel>) -> Self {
        AlgebraElement {
            model: Arc::clone(model),
            coeffs: BTreeMap::new(),
        }
    }

    /// The characteristic function `χ_key`.
    pub fn basis(model: &Arc<GroupModel>, key: OrbitKey) -> Result<Self> {
        Self::from_terms(model, [(key, K::one())])
    }

    /// The identity `χ_e`.
    pub fn one(model: &Arc<GroupModel>) -> Self {
        Self::basis(model, model.empty_key()).expect("empty key is valid")
    }

    pub fn from_terms(
        model: &Arc<GroupModel>,
        terms: impl IntoIterator<Item = (OrbitKey, K)>,
    ) -> Result<Self> {
        let mut out = Self::zero(model);
        for (k, c) in terms {
            model.check_key(&k)?;
            out.add_term(k, c);
        }
        Ok(out)
    }

    /// `ε`: the sum of the characteristic functions of all weight-1 blocks.
    pub fn epsilon(model: &Arc<GroupModel>) -> Self {
        let terms = model
            .blocks()
            .into_iter()
            .filter(|b| b.weight() == 1)
            .map(|b| (model.key(vec![b]), K::one()));
        Self::from_terms(model, terms).expect("model blocks are valid keys")
    }

    fn add_term(&mut self, key: OrbitKey, c: K) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn model(&self) -> &Arc<GroupModel> {
        &self.model
    }

    pub fn coefficient(&self, key: &OrbitKey) -> K {
        self.coeffs.get(key).cloned().unwrap_or_else(K::zero)
    }

    /// Terms in structural key order.
    pub fn terms(&self) -> impl Iterator<Item = (&OrbitKey, &K)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &OrbitKey> {
        self.coeffs.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// `Some(n)` if every key has weight `n`; `None` for mixed weights. The
    /// zero element is homogeneous of every degree and reports `None`.
    pub fn degree(&self) -> Option<u32> {
        let mut weights = self.coeffs.keys().map(OrbitKey::weight);
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    pub fn is_homogeneous(&self, n: u32) -> bool {
        self.coeffs.keys().all(|k| k.weight() == n)
    }

    /// Splits into homogeneous components by weight.
    pub fn components(&self) -> BTreeMap<u32, AlgebraElement<K>> {
        let mut out: BTreeMap<u32, AlgebraElement<K>> = BTreeMap::new();
        for (k, c) in &self.coeffs {
            out.entry(k.weight())
                .or_insert_with(|| Self::zero(&self.model))
                .coeffs
                .insert(k.clone(), c.clone());
        }
        out
    }

    fn check_same_model(&self, other: &Self) -> Result<()> {
        if same_model(&self.model, &other.model) {
            Ok(())
        } else {
            Err(Error::MixedModels)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_model(other)?;
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-K::one()))
    }

    pub fn scale(&self, s: &K) -> Self {
        let mut out = Self::zero(&self.model);
        for (k, c) in &self.coeffs {
            out.add_term(k.clone(), c.clone() * s.clone());
        }
        out
    }

    /// The algebra product, extended bilinearly from basis products.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_same_model(other)?;
        let mut out = Self::zero(&self.model);
        for (v, a) in &self.coeffs {
            for (w, b) in &other.coeffs {
                let ab = a.clone() * b.clone();
                for (u, c) in self.model.basis_product(v, w)?.iter() {
                    out.add_term(u.clone(), ab.clone() * K::from_bigint(c));
                }
            }
        }
        Ok(out)
    }

    /// `self` multiplied by itself `r` times (`χ_e` for `r = 0`).
    pub fn power(&self, r: usize) -> Result<Self> {
        (0..r).try_fold(Self::one(&self.model), |acc, _| acc.product(self))
    }

    /// The complete shuffle product `χ_v · χ_w` of two words.
    pub fn complete_shuffle(model: &Arc<GroupModel>, v: &Word, w: &Word) -> Result<Self> {
        require_ordered(model)?;
        let a = Self::basis(model, OrbitKey::Word(v.clone()))?;
        let b = Self::basis(model, OrbitKey::Word(w.clone()))?;
        a.product(&b)
    }

    /// `S̄(w) = (1 / r1!⋯rk!) · l1^r1 ⋯ lk^rk` over the Lyndon factorization
    /// `w = l1^r1 ⋯ lk^rk`, with powers and products in the algebra.
    pub fn sbar(model: &Arc<GroupModel>, w: &Word) -> Result<Self> {
        require_ordered(model)?;
        model.check_key(&OrbitKey::Word(w.clone()))?;
        model.check_weight(w.weight())?;
        if w.is_empty() {
            return Ok(Self::one(model));
        }
        let mut acc = Self::one(model);
        let mut denom = K::one();
        for (l, r) in lyndon_factorization(w)? {
            let gen = Self::basis(model, OrbitKey::Word(l))?;
            acc = acc.product(&gen.power(r)?)?;
            denom = denom * factorial::<K>(r);
        }
        Ok(acc.scale(&(K::one() / denom)))
    }

    /// Coordinates in the `{S̄(w)}` basis, by back substitution one
    /// homogeneous component at a time.
    pub fn to_generator_basis(&self) -> Result<BTreeMap<Word, K>> {
        require_ordered(&self.model)?;
        let mut out = BTreeMap::new();
        for (n, comp) in self.components() {
            let mut rest = comp;
            for key in self.model.orbits_of_weight(n)? {
                let x = rest.coefficient(&key);
                if x.is_zero() {
                    continue;
                }
                let w = key.as_word().expect("ordered model").clone();
                // S̄(w) = χ_w + (terms above w), so its leading coefficient is 1
                rest = rest.sub(&Self::sbar(&self.model, &w)?.scale(&x))?;
                out.insert(w, x);
            }
            debug_assert!(rest.is_zero());
        }
        Ok(out)
    }

    /// Inverse of [`to_generator_basis`](Self::to_generator_basis).
    pub fn from_generator_basis(
        model: &Arc<GroupModel>,
        coords: &BTreeMap<Word, K>,
    ) -> Result<Self> {
        require_ordered(model)?;
        coords.iter().try_fold(Self::zero(model), |acc, (w, x)| {
            acc.add(&Self::sbar(model, w)?.scale(x))
        })
    }

    /// The least support key in the model's Ramsey order.
    pub fn leading_orbit(&self) -> Result<OrbitKey> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        if self.degree().is_none() {
            return Err(Error::NotHomogeneous);
        }
        Ok(self
            .coeffs
            .keys()
            .min_by(|a, b| self.model.ramsey_cmp(a, b))
            .expect("nonzero")
            .clone())
    }

    /// Parses lines `<p>/<q> <orbit-key>` (a bare integer is allowed).
    pub fn parse(model: &Arc<GroupModel>, text: &str) -> Result<Self> {
        let mut out = Self::zero(model);
        for line in text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
        {
            let (c, k) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| Error::Parse(format!("bad element line {line:?}")))?;
            let c =
                K::parse_scalar(c).ok_or_else(|| Error::Parse(format!("bad coefficient {c:?}")))?;
            out.add_term(model.parse_key(k.trim())?, c);
        }
        Ok(out)
    }
}

/// One `<coefficient> <key>` line per term, keys ascending in the Ramsey
/// order.
impl<K: Scalar> fmt::Display for AlgebraElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<&OrbitKey> = self.coeffs.keys().collect();
        keys.sort_by(|a, b| self.model.ramsey_cmp(a, b));
        for k in keys {
            writeln!(f, "{} {}", self.coeffs[k], k)?;
        }
        Ok(())
    }
}

fn require_ordered(model: &GroupModel) -> Result<()> {
    match model.kind() {
        GroupKind::WreathA => Ok(()),
        GroupKind::WreathS => Err(Error::WrongKind("wreath_A")),
    }
}

/// Matrix of `{S̄(w)}` against `{χ_u}` at weight `n`: entry `[i][j]` is the
/// coefficient of `χ_{u_i}` in `S̄(u_j)`, words ascending in the Ramsey
/// order. Lower unitriangular for a valid model.
pub fn sbar_matrix<K: Scalar>(model: &Arc<GroupModel>, n: u32) -> Result<(Vec<Word>, Vec<Vec<K>>)> {
    require_ordered(model)?;
    let words: Vec<Word> = model
        .orbits_of_weight(n)?
        .into_iter()
        .map(|k| k.as_word().expect("ordered").clone())
        .collect();
    let mut cols = Vec::with_capacity(words.len());
    for w in &words {
        let s = AlgebraElement::<K>::sbar(model, w)?;
        cols.push(
            words
                .iter()
                .map(|u| s.coefficient(&OrbitKey::Word(u.clone())))
                .collect::<Vec<K>>(),
        );
    }
    let size = words.len();
    let rows = (0..size)
        .map(|i| (0..size).map(|j| cols[j][i].clone()).collect())
        .collect();
    Ok((words, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{AlphabetProfile, SplitEntry};
    use crate::{Block, Element, Rational};

    fn sk2() -> Arc<GroupModel> {
        Arc::new(GroupModel::sk_wr_a(2).unwrap())
    }

    fn chi(model: &Arc<GroupModel>, s: &str) -> Element {
        Element::basis(model, model.parse_key(s).unwrap()).unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn elem(model: &Arc<GroupModel>, terms: &[(i64, &str)]) -> Element {
        Element::from_terms(
            model,
            terms
                .iter()
                .map(|(c, k)| (model.parse_key(k).unwrap(), q(*c))),
        )
        .unwrap()
    }

    #[test]
    fn product_examples() {
        let m = sk2();
        let p = chi(&m, "b1.1").product(&chi(&m, "b1.1")).unwrap();
        assert_eq!(p, elem(&m, &[(2, "b1.1-b1.1"), (2, "b2.1")]));
        let p = chi(&m, "b1.1").product(&chi(&m, "b2.1")).unwrap();
        assert_eq!(p, elem(&m, &[(1, "b1.1-b2.1"), (1, "b2.1-b1.1")]));
        let f = elem(&m, &[(3, "b2.1"), (-1, "b1.1-b1.1")]);
        assert_eq!(Element::one(&m).product(&f).unwrap(), f);
        assert_eq!(f.product(&Element::one(&m)).unwrap(), f);
    }

    #[test]
    fn mixed_models_rejected() {
        let a = chi(&sk2(), "b1.1");
        let other = Arc::new(GroupModel::sk_wr_a(3).unwrap());
        let b = chi(&other, "b1.1");
        assert!(matches!(a.product(&b), Err(Error::MixedModels)));
        // structurally equal models are the same model
        let c = chi(&sk2(), "b1.1");
        assert!(a.product(&c).is_ok());
    }

    #[test]
    fn truncation_overflow_rejected() {
        let m = Arc::new(GroupModel::a_wr_a(3).unwrap());
        let f = chi(&m, "b2.1");
        assert!(matches!(
            f.product(&f),
            Err(Error::WeightOverflow { weight: 4, max: 3 })
        ));
    }

    #[test]
    fn complete_shuffle_examples() {
        let m = sk2();
        let one: Word = "b1.1".parse().unwrap();
        let p = Element::complete_shuffle(&m, &one, &one).unwrap();
        assert_eq!(p, elem(&m, &[(2, "b1.1-b1.1"), (2, "b2.1")]));
        let v: Word = "b2.1-b1.1".parse().unwrap();
        assert_eq!(
            Element::complete_shuffle(&m, &v, &Word::empty()).unwrap(),
            chi(&m, "b2.1-b1.1")
        );

        // only trivial splits: no weight-2 block can arise from two points
        let profile = AlphabetProfile::new([(1, 1), (2, 1)]).unwrap();
        let table = [Block::first(1), Block::first(2)]
            .into_iter()
            .map(|b| {
                let whole = Word::letter(b);
                (
                    b,
                    vec![
                        SplitEntry {
                            left: whole.clone(),
                            right: Word::empty(),
                            multiplicity: 1,
                        },
                        SplitEntry {
                            left: Word::empty(),
                            right: whole,
                            multiplicity: 1,
                        },
                    ],
                )
            })
            .collect();
        let flat =
            Arc::new(GroupModel::new("flat", GroupKind::WreathA, profile, None, table).unwrap());
        let p = Element::complete_shuffle(&flat, &one, &one).unwrap();
        assert_eq!(p, elem(&flat, &[(2, "b1.1-b1.1")]));
    }

    #[test]
    fn epsilon_examples() {
        let m = sk2();
        assert_eq!(Element::epsilon(&m), chi(&m, "b1.1"));
        let eps = Element::epsilon(&m);
        assert_eq!(
            eps.product(&eps).unwrap(),
            elem(&m, &[(2, "b1.1-b1.1"), (2, "b2.1")])
        );

        let two = Arc::new(GroupModel::load_custom("weight 1 = 2\nb1.1 : b1.1 | e\nb1.1 : e | b1.1\nb1.2 : b1.2 | e\nb1.2 : e | b1.2\n").unwrap());
        assert_eq!(
            Element::epsilon(&two),
            elem(&two, &[(1, "b1.1"), (1, "b1.2")])
        );
    }

    #[test]
    fn sbar_examples() {
        let m = sk2();
        let s = Element::sbar(&m, &"b1.1-b1.1".parse().unwrap()).unwrap();
        assert_eq!(s, elem(&m, &[(1, "b1.1-b1.1"), (1, "b2.1")]));
        assert_eq!(
            Element::sbar(&m, &"b2.1".parse().unwrap()).unwrap(),
            chi(&m, "b2.1")
        );

        let w: Word = "b2.1-b1.1".parse().unwrap();
        let s = Element::sbar(&m, &w).unwrap();
        let key = OrbitKey::Word(w.clone());
        assert_eq!(s.coefficient(&key), q(1));
        for (u, _) in s.terms().filter(|(u, _)| **u != key) {
            assert!(m.ramsey_cmp(u, &key).is_gt(), "{u} not above {w}");
        }
        // b2.1 ⧢̄ b1.1 = b1.1-b2.1 + b2.1-b1.1 + 2 b2.1-... terms with weight-3 content above
        assert_eq!(s.leading_orbit().unwrap(), key);
    }

    #[test]
    fn generator_basis_examples() {
        let m = sk2();
        let coords = chi(&m, "b2.1").to_generator_basis().unwrap();
        assert_eq!(coords, BTreeMap::from([("b2.1".parse().unwrap(), q(1))]));
        let coords = chi(&m, "b1.1-b1.1").to_generator_basis().unwrap();
        assert_eq!(
            coords,
            BTreeMap::from([
                ("b1.1-b1.1".parse().unwrap(), q(1)),
                ("b2.1".parse().unwrap(), q(-1))
            ])
        );
        let f = elem(&m, &[(1, "b1.1-b1.1"), (-3, "b2.1-b1.1-b1.1"), (7, "b2.1")]);
        let back = Element::from_generator_basis(&m, &f.to_generator_basis().unwrap()).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn sbar_rejected_for_unordered_models() {
        let s = Arc::new(GroupModel::sk_wr_s(2).unwrap());
        assert!(matches!(
            Element::sbar(&s, &"b1.1".parse().unwrap()),
            Err(Error::WrongKind(_))
        ));
    }

    #[test]
    fn leading_orbit_examples() {
        let m = sk2();
        assert_eq!(
            elem(&m, &[(3, "b2.1"), (-1, "b1.1-b1.1")])
                .leading_orbit()
                .unwrap(),
            m.parse_key("b1.1-b1.1").unwrap()
        );
        assert_eq!(
            elem(&m, &[(1, "b2.1-b1.1"), (1, "b1.1-b2.1")])
                .leading_orbit()
                .unwrap(),
            m.parse_key("b2.1-b1.1").unwrap()
        );
        assert_eq!(
            chi(&m, "b2.1").leading_orbit().unwrap(),
            m.parse_key("b2.1").unwrap()
        );
        assert!(matches!(
            Element::zero(&m).leading_orbit(),
            Err(Error::ZeroElement)
        ));
        assert!(matches!(
            elem(&m, &[(1, "b1.1"), (1, "b2.1")]).leading_orbit(),
            Err(Error::NotHomogeneous)
        ));
    }

    #[test]
    fn element_text_round_trip() {
        let m = sk2();
        let f = Element::from_terms(
            &m,
            [
                (
                    m.parse_key("b1.1-b1.1").unwrap(),
                    Rational::new(1.into(), 2.into()),
                ),
                (m.parse_key("b2.1").unwrap(), q(-4)),
            ],
        )
        .unwrap();
        let text = f.to_string();
        assert_eq!(text, "1/2 b1.1-b1.1\n-4 b2.1\n");
        assert_eq!(Element::parse(&m, &text).unwrap(), f);
        assert!(Element::parse(&m, "x b1.1").is_err());
        assert!(Element::parse(&m, "1 b3.1").is_err());
    }

    #[test]
    fn float_scalars_agree_on_small_products() {
        let m = sk2();
        let a = crate::Element64::epsilon(&m);
        let p = a.product(&a).unwrap();
        assert_eq!(p.coefficient(&m.parse_key("b2.1").unwrap()), 2.0);
    }
}

//! Element counts of grossone-measured sets and the equiprobable
//! sample-space model.
//!
//! Sets are arithmetic progressions with an explicitly stored element count,
//! which covers ℕ = {1, 2, …, ①}, the even numbers {2, 4, …, ①} with ①/2
//! elements, their affine images, and finite ranges.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::gross::{GrossError, GrossNumber, NumClass};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("progression step must be nonzero")]
    ZeroStep,
    #[error("invalid element count {0}: must be positive and integer-like")]
    InvalidCount(GrossNumber),
    #[error("{0} is not a member of the set")]
    NotAMember(GrossNumber),
    #[error("{0} is already a member of the set")]
    AlreadyMember(GrossNumber),
    #[error("not a subset")]
    NotASubset,
    #[error("sets are equal, not a proper subset")]
    NotAProperSubset,
    #[error("elements do not form an arithmetic progression")]
    NotAProgression,
    #[error("invalid probability model: {0}")]
    InvalidModel(String),
    #[error(transparent)]
    Arithmetic(#[from] GrossError),
}

/// `{start + step·(i−1) : 1 ≤ i ≤ count}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProgressionSet {
    start: GrossNumber,
    step: Rational,
    count: GrossNumber,
}

fn integer_like(x: &GrossNumber) -> bool {
    x.is_parity_eligible()
}

impl ProgressionSet {
    pub fn new(start: GrossNumber, step: Rational, count: GrossNumber) -> Result<Self, SetError> {
        if step.is_zero() {
            return Err(SetError::ZeroStep);
        }
        if count.sign() <= 0 || !integer_like(&count) {
            return Err(SetError::InvalidCount(count));
        }
        Ok(ProgressionSet { start, step, count })
    }

    /// ℕ = {1, 2, …, ①}.
    pub fn naturals() -> Self {
        ProgressionSet {
            start: GrossNumber::one(),
            step: Rational::one(),
            count: GrossNumber::grossone(),
        }
    }

    /// The even naturals {2, 4, …, ①}, which have ①/2 elements.
    pub fn evens() -> Self {
        ProgressionSet {
            start: GrossNumber::from_int(2),
            step: rational::from_int(2),
            count: GrossNumber::grossone().scalar_mul(&rational::from_frac(1, 2)),
        }
    }

    /// The finite range `{lo, lo+1, …, hi}`.
    pub fn range(lo: i64, hi: i64) -> Result<Self, SetError> {
        Self::new(
            GrossNumber::from_int(lo),
            Rational::one(),
            GrossNumber::from_int(hi - lo + 1),
        )
    }

    /// A finite set given by its elements, which must form an arithmetic
    /// progression with finite step.
    pub fn from_elements(elements: &[GrossNumber]) -> Result<Self, SetError> {
        let Some(first) = elements.first() else {
            return Err(SetError::InvalidCount(GrossNumber::zero()));
        };
        let step = match elements.get(1) {
            None => Rational::one(),
            Some(second) => (second - first)
                .as_rational()
                .ok_or(SetError::NotAProgression)?,
        };
        let set = Self::new(
            first.clone(),
            step,
            GrossNumber::from_int(elements.len() as i64),
        )?;
        for (i, e) in elements.iter().enumerate() {
            if set.element_at(i as i64 + 1) != *e {
                return Err(SetError::NotAProgression);
            }
        }
        Ok(set)
    }

    pub fn start(&self) -> &GrossNumber {
        &self.start
    }

    pub fn step(&self) -> &Rational {
        &self.step
    }

    pub fn count(&self) -> &GrossNumber {
        &self.count
    }

    /// Element at 1-based position `i` (finite `i`).
    pub fn element_at(&self, i: i64) -> GrossNumber {
        &self.start + GrossNumber::from_rational(&self.step * rational::from_int(i - 1))
    }

    /// Element at a gross 1-based position, if it is a valid index.
    pub fn element(&self, i: &GrossNumber) -> Option<GrossNumber> {
        let one = GrossNumber::one();
        (integer_like(i) && *i >= one && *i <= self.count)
            .then(|| &self.start + (i - &one).scalar_mul(&self.step))
    }

    pub fn last(&self) -> GrossNumber {
        &self.start + (&self.count - GrossNumber::one()).scalar_mul(&self.step)
    }

    /// The 1-based index of `x`, solved exactly.
    pub fn index_of(&self, x: &GrossNumber) -> Option<GrossNumber> {
        let i = (x - &self.start).scalar_mul(&self.step.recip()) + GrossNumber::one();
        (integer_like(&i) && i >= GrossNumber::one() && i <= self.count).then_some(i)
    }

    pub fn member(&self, x: &GrossNumber) -> bool {
        self.index_of(x).is_some()
    }

    /// Enumerates the elements when the count is finite.
    pub fn finite_elements(&self) -> Option<Vec<GrossNumber>> {
        let n = rational::to_i64(&self.count.as_rational()?)?;
        Some((1..=n).map(|i| self.element_at(i)).collect())
    }

    /// `{a·x + b : x ∈ self}`; the element count is unchanged.
    pub fn affine_image(&self, a: &Rational, b: &Rational) -> Result<Self, SetError> {
        if a.is_zero() {
            return Err(SetError::ZeroStep);
        }
        Ok(ProgressionSet {
            start: self.start.scalar_mul(a) + GrossNumber::from_rational(b.clone()),
            step: &self.step * a,
            count: self.count.clone(),
        })
    }

    /// Count of `self ∖ {x}`.
    pub fn remove_one(&self, x: &GrossNumber) -> Result<GrossNumber, SetError> {
        if !self.member(x) {
            return Err(SetError::NotAMember(x.clone()));
        }
        Ok(&self.count - GrossNumber::one())
    }

    /// Count of `self ∪ {x}`.
    pub fn add_one(&self, x: &GrossNumber) -> Result<GrossNumber, SetError> {
        if self.member(x) {
            return Err(SetError::AlreadyMember(x.clone()));
        }
        Ok(&self.count + GrossNumber::one())
    }

    /// Containment decided on the progressions: both endpoints of `self`
    /// lie in `other` and the step of `self` is a whole multiple of the step
    /// of `other`.
    pub fn is_subset_of(&self, other: &ProgressionSet) -> bool {
        if !other.member(&self.start) || !other.member(&self.last()) {
            return false;
        }
        self.count.is_one() || (&self.step / &other.step).is_integer()
    }

    /// Set equality, independent of traversal direction.
    pub fn same_elements(&self, other: &ProgressionSet) -> bool {
        if self.count != other.count {
            return false;
        }
        let (lo_a, hi_a) = self.bounds();
        let (lo_b, hi_b) = other.bounds();
        lo_a == lo_b && hi_a == hi_b && (self.count.is_one() || self.step.abs() == other.step.abs())
    }

    fn bounds(&self) -> (GrossNumber, GrossNumber) {
        let last = self.last();
        if self.step.is_positive() {
            (self.start.clone(), last)
        } else {
            (last, self.start.clone())
        }
    }
}

pub fn count(s: &ProgressionSet) -> GrossNumber {
    s.count.clone()
}

pub fn member(x: &GrossNumber, s: &ProgressionSet) -> bool {
    s.member(x)
}

/// Number of tuples in a Cartesian product: the product of the counts.
pub fn product_count(counts: &[GrossNumber]) -> GrossNumber {
    counts.iter().fold(GrossNumber::one(), |acc, c| &acc * c)
}

/// Number of sequences of `length` elements drawn from `base_count`
/// elements, `base_count^length`.
pub fn tuple_space_count(
    base_count: &GrossNumber,
    length: &GrossNumber,
) -> Result<GrossNumber, SetError> {
    Ok(base_count.power_gross(length)?)
}

/// For `a ⊊ b`, checks that `a` has strictly fewer elements than `b`.
pub fn proper_subset_strictly_smaller(
    a: &ProgressionSet,
    b: &ProgressionSet,
) -> Result<bool, SetError> {
    if !a.is_subset_of(b) {
        return Err(SetError::NotASubset);
    }
    if a.same_elements(b) {
        return Err(SetError::NotAProperSubset);
    }
    Ok(a.count < b.count)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HotelOutcome {
    pub accommodated: bool,
    pub evicted_room: GrossNumber,
}

/// Moves every guest from room `i` to room `i + 1` in a full hotel with
/// rooms `1..=rooms`. The guest of the last room has nowhere to go.
pub fn hotel_shift(rooms: &GrossNumber) -> Result<HotelOutcome, SetError> {
    let hotel = ProgressionSet::new(GrossNumber::one(), Rational::one(), rooms.clone())?;
    let last = hotel.last();
    let target = &last + GrossNumber::one();
    let accommodated = hotel.member(&target);
    Ok(HotelOutcome {
        accommodated,
        evicted_room: last,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventClass {
    Impossible,
    InfinitesimalProbability,
    FiniteProbability,
    Certain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventExtent {
    Point,
    Arc,
}

/// Equiprobable sample space of `total` elementary events, `favorable` of
/// which make up the event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbabilityModel {
    total: GrossNumber,
    favorable: GrossNumber,
}

impl ProbabilityModel {
    pub fn new(total: GrossNumber, favorable: GrossNumber) -> Result<Self, SetError> {
        if total.sign() <= 0 {
            return Err(SetError::InvalidModel(format!(
                "total {total} must be positive"
            )));
        }
        if favorable.sign() < 0 {
            return Err(SetError::InvalidModel(format!(
                "favorable {favorable} must be nonnegative"
            )));
        }
        if favorable > total {
            return Err(SetError::InvalidModel(format!(
                "favorable {favorable} exceeds total {total}"
            )));
        }
        Ok(ProbabilityModel { total, favorable })
    }

    pub fn total(&self) -> &GrossNumber {
        &self.total
    }

    pub fn favorable(&self) -> &GrossNumber {
        &self.favorable
    }

    /// `N(E)/N(Ω)`, exact.
    pub fn probability(&self) -> Result<GrossNumber, SetError> {
        Ok(self.favorable.exact_divide(&self.total)?)
    }

    pub fn classify_event(&self) -> Result<EventClass, SetError> {
        if self.favorable.is_zero() {
            return Ok(EventClass::Impossible);
        }
        if self.favorable == self.total {
            return Ok(EventClass::Certain);
        }
        Ok(match self.probability()?.classify() {
            NumClass::Infinitesimal => EventClass::InfinitesimalProbability,
            _ => EventClass::FiniteProbability,
        })
    }

    /// The model of the complementary event.
    pub fn complement(&self) -> ProbabilityModel {
        ProbabilityModel {
            total: self.total.clone(),
            favorable: &self.total - &self.favorable,
        }
    }
}

/// A finite number of favorable points is a point-like event; an infinite
/// number is an arc. The empty event has no extent.
pub fn event_extent(m: &GrossNumber) -> Option<EventExtent> {
    match m.classify() {
        NumClass::FiniteNonzero => Some(EventExtent::Point),
        NumClass::Infinite => Some(EventExtent::Arc),
        NumClass::Zero | NumClass::Infinitesimal => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{from_frac, from_int};

    fn p(s: &str) -> GrossNumber {
        s.parse().unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(count(&ProgressionSet::naturals()), p("G1"));
        assert_eq!(count(&ProgressionSet::evens()), p("0.5*G1"));
        assert_eq!(count(&ProgressionSet::range(1, 5).unwrap()), p("5"));
        assert_eq!(ProgressionSet::evens().last(), p("G1"));
        assert_eq!(ProgressionSet::naturals().last(), p("G1"));
    }

    #[test]
    fn membership() {
        let n = ProgressionSet::naturals();
        assert!(member(&p("G1"), &n));
        assert!(member(&p("0.5*G1"), &n));
        assert!(member(&p("G1 - 1"), &n));
        assert!(!member(&p("G1 + 2"), &n));
        assert!(!member(&p("G1 + 1"), &n));
        assert!(!member(&p("0"), &n));
        assert!(!member(&p("1/2"), &n));
        assert!(!member(&p("1 + G1^{-1}"), &n));
        let evens = ProgressionSet::evens();
        assert!(member(&p("G1"), &evens));
        assert!(!member(&p("G1 - 1"), &evens));
        assert!(!member(&p("G1 + 2"), &evens));
    }

    #[test]
    fn affine_images_keep_count() {
        let doubled = ProgressionSet::naturals()
            .affine_image(&from_int(2), &from_int(0))
            .unwrap();
        assert_eq!(doubled.start(), &p("2"));
        assert_eq!(doubled.step(), &from_int(2));
        assert_eq!(doubled.count(), &p("G1"));
        assert!(doubled.member(&p("2*G1")));
        assert!(!doubled.member(&p("2*G1 + 2")));

        let shifted = ProgressionSet::range(1, 5)
            .unwrap()
            .affine_image(&from_int(1), &from_int(1))
            .unwrap();
        assert!(shifted.same_elements(&ProgressionSet::range(2, 6).unwrap()));

        let halved = ProgressionSet::evens()
            .affine_image(&from_frac(1, 2), &from_int(0))
            .unwrap();
        assert_eq!(halved.start(), &p("1"));
        assert_eq!(halved.step(), &from_int(1));
        assert_eq!(halved.count(), &p("0.5*G1"));
        assert!(matches!(
            ProgressionSet::naturals().affine_image(&from_int(0), &from_int(1)),
            Err(SetError::ZeroStep)
        ));
    }

    #[test]
    fn add_and_remove() {
        let n = ProgressionSet::naturals();
        assert_eq!(n.remove_one(&p("7")).unwrap(), p("G1 - 1"));
        assert_eq!(n.add_one(&p("G1 + 1")).unwrap(), p("G1 + 1"));
        assert_eq!(
            ProgressionSet::range(1, 5)
                .unwrap()
                .remove_one(&p("3"))
                .unwrap(),
            p("4")
        );
        assert!(matches!(
            n.remove_one(&p("0")),
            Err(SetError::NotAMember(_))
        ));
        assert!(matches!(
            n.add_one(&p("3")),
            Err(SetError::AlreadyMember(_))
        ));
    }

    #[test]
    fn products_and_tuples() {
        assert_eq!(product_count(&[p("G1"), p("G1")]), p("G1^{2}"));
        assert_eq!(tuple_space_count(&p("G1"), &p("G1")).unwrap(), p("G1^{G1}"));
        assert!(matches!(
            tuple_space_count(&p("2"), &p("G1")),
            Err(SetError::Arithmetic(
                GrossError::UnsupportedExponentiation { .. }
            ))
        ));
    }

    #[test]
    fn part_less_than_whole() {
        let n = ProgressionSet::naturals();
        assert!(proper_subset_strictly_smaller(&ProgressionSet::evens(), &n).unwrap());
        assert!(proper_subset_strictly_smaller(
            &ProgressionSet::range(1, 5).unwrap(),
            &ProgressionSet::range(1, 10).unwrap()
        )
        .unwrap());
        let without_one = ProgressionSet::new(p("2"), from_int(1), p("G1 - 1")).unwrap();
        assert!(proper_subset_strictly_smaller(&without_one, &n).unwrap());
        assert_eq!(
            proper_subset_strictly_smaller(&n, &ProgressionSet::evens()),
            Err(SetError::NotASubset)
        );
        assert_eq!(
            proper_subset_strictly_smaller(&n, &n),
            Err(SetError::NotAProperSubset)
        );
        let odds_in_naturals = ProgressionSet::new(p("1"), from_int(2), p("0.5*G1")).unwrap();
        assert!(odds_in_naturals.is_subset_of(&n));
        let thirds = ProgressionSet::new(p("1"), from_frac(1, 2), p("3")).unwrap();
        assert!(!thirds.is_subset_of(&n));
    }

    #[test]
    fn hotel() {
        let out = hotel_shift(&p("G1")).unwrap();
        assert!(!out.accommodated);
        assert_eq!(out.evicted_room, p("G1"));
        let out = hotel_shift(&p("10")).unwrap();
        assert!(!out.accommodated);
        assert_eq!(out.evicted_room, p("10"));
        assert!(!ProgressionSet::naturals().member(&p("G1 + 1")));
        assert!(hotel_shift(&p("0")).is_err());
    }

    #[test]
    fn from_elements_validates() {
        let s = ProgressionSet::from_elements(&[p("3"), p("5"), p("7")]).unwrap();
        assert_eq!(s.finite_elements().unwrap(), vec![p("3"), p("5"), p("7")]);
        assert_eq!(
            ProgressionSet::from_elements(&[p("3"), p("5"), p("8")]),
            Err(SetError::NotAProgression)
        );
        assert!(ProgressionSet::from_elements(&[]).is_err());
        assert!(ProgressionSet::new(p("1"), from_int(1), p("G1^{-1}")).is_err());
        assert!(ProgressionSet::new(p("1"), from_int(0), p("3")).is_err());
    }

    #[test]
    fn probability_model() {
        let m = ProbabilityModel::new(p("G1"), p("3")).unwrap();
        assert_eq!(m.probability().unwrap(), p("3*G1^{-1}"));
        assert_eq!(
            m.classify_event().unwrap(),
            EventClass::InfinitesimalProbability
        );
        assert!(m.probability().unwrap().sign() > 0);

        let m = ProbabilityModel::new(p("G1^{2}"), p("3")).unwrap();
        assert_eq!(m.probability().unwrap(), p("3*G1^{-2}"));

        let m = ProbabilityModel::new(p("G1"), p("0")).unwrap();
        assert!(m.probability().unwrap().is_zero());
        assert_eq!(m.classify_event().unwrap(), EventClass::Impossible);

        let m = ProbabilityModel::new(p("G1"), p("0.5*G1")).unwrap();
        assert_eq!(m.classify_event().unwrap(), EventClass::FiniteProbability);
        let m = ProbabilityModel::new(p("G1"), p("G1")).unwrap();
        assert_eq!(m.classify_event().unwrap(), EventClass::Certain);

        assert!(ProbabilityModel::new(p("G1"), p("G1 + 1")).is_err());
        assert!(ProbabilityModel::new(p("0"), p("0")).is_err());
        assert!(ProbabilityModel::new(p("G1"), p("-1")).is_err());
    }

    #[test]
    fn extents() {
        assert_eq!(event_extent(&p("4")), Some(EventExtent::Point));
        assert_eq!(event_extent(&p("G1")), Some(EventExtent::Arc));
        assert_eq!(event_extent(&p("0")), None);
    }
}

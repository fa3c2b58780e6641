use std::hash::Hash;

use rustc_hash::FxHashMap;

use super::Dyadic;

/// A finite distribution with exact probabilities. Outcomes of probability
/// zero are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution<T: Eq + Hash> {
    table: FxHashMap<T, Dyadic>,
}

impl<T: Eq + Hash + Clone> Distribution<T> {
    pub(crate) fn from_table(mut table: FxHashMap<T, Dyadic>) -> Self {
        table.retain(|_, p| !p.is_zero());
        Distribution { table }
    }

    pub fn point(x: T) -> Self {
        Distribution {
            table: FxHashMap::from_iter([(x, Dyadic::one())]),
        }
    }

    /// Uniform over `items`, whose length must be a power of two.
    pub fn uniform_over(items: impl IntoIterator<Item = T>) -> Self {
        let items: Vec<T> = items.into_iter().collect();
        assert!(
            items.len().is_power_of_two(),
            "dyadic uniform needs 2^k outcomes"
        );
        let p = Dyadic::pow2_neg(items.len().trailing_zeros());
        let mut table = FxHashMap::default();
        for x in items {
            *table.entry(x).or_insert_with(Dyadic::zero) += &p;
        }
        Distribution { table }
    }

    pub fn prob(&self, x: &T) -> Dyadic {
        self.table.get(x).cloned().unwrap_or_default()
    }

    /// Probability of the event `pred`.
    pub fn pr(&self, pred: impl Fn(&T) -> bool) -> Dyadic {
        self.table
            .iter()
            .filter(|(x, _)| pred(x))
            .map(|(_, p)| p)
            .sum()
    }

    pub fn total_mass(&self) -> Dyadic {
        self.table.values().sum()
    }

    pub fn support_len(&self) -> usize {
        self.table.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, &Dyadic)> {
        self.table.iter()
    }

    /// Pushes the distribution forward through `f`.
    pub fn map<U: Eq + Hash + Clone>(&self, f: impl Fn(&T) -> U) -> Distribution<U> {
        let mut table = FxHashMap::default();
        for (x, p) in &self.table {
            *table.entry(f(x)).or_insert_with(Dyadic::zero) += p;
        }
        Distribution { table }
    }
}

impl Distribution<bool> {
    pub fn pr_true(&self) -> Dyadic {
        self.prob(&true)
    }
}

/// Total variation distance `1/2 * sum |a(x) - b(x)|`, exactly.
pub fn statistical_distance<T: Eq + Hash + Clone>(
    a: &Distribution<T>,
    b: &Distribution<T>,
) -> Dyadic {
    let mut sum = Dyadic::zero();
    for (x, p) in a.iter() {
        sum += &p.abs_diff(&b.prob(x));
    }
    for (x, q) in b.iter() {
        if a.prob(x).is_zero() {
            sum += q;
        }
    }
    sum.shr(1)
}

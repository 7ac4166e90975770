use std::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::Rng;

/// Degree-then-left-lexicographic order on words, determined by a ranking of
/// the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    rank: Vec<usize>,
}

impl MonomialOrder {
    /// Generator `i` has rank `i`.
    pub fn identity(g: usize) -> Self {
        Self { rank: (0..g).collect() }
    }

    /// `ascending[k]` is the generator of rank `k`. Panics unless it is a
    /// permutation of `0..len`.
    pub fn from_ascending(ascending: &[usize]) -> Self {
        let mut rank = vec![usize::MAX; ascending.len()];
        for (k, &gen) in ascending.iter().enumerate() {
            assert!(gen < rank.len() && rank[gen] == usize::MAX, "not a permutation");
            rank[gen] = k;
        }
        Self { rank }
    }

    pub fn random<R: Rng>(g: usize, rng: &mut R) -> Self {
        let mut asc: Vec<usize> = (0..g).collect();
        asc.shuffle(rng);
        Self::from_ascending(&asc)
    }

    pub fn reversed(&self) -> Self {
        let g = self.rank.len();
        Self {
            rank: self.rank.iter().map(|r| g - 1 - r).collect(),
        }
    }

    pub fn num_generators(&self) -> usize {
        self.rank.len()
    }

    pub fn rank(&self, gen: usize) -> usize {
        self.rank[gen]
    }

    /// Generators from smallest to largest.
    pub fn ascending(&self) -> Vec<usize> {
        let mut asc = vec![0; self.rank.len()];
        for (gen, &r) in self.rank.iter().enumerate() {
            asc[r] = gen;
        }
        asc
    }

    /// Word in rank coordinates; comparing these lexicographically (after
    /// length) is the order.
    pub fn key(&self, w: &[usize]) -> Vec<usize> {
        w.iter().map(|&x| self.rank[x]).collect()
    }

    pub fn unkey(&self, k: &[usize]) -> Vec<usize> {
        let asc = self.ascending();
        k.iter().map(|&r| asc[r]).collect()
    }

    pub fn compare(&self, a: &[usize], b: &[usize]) -> Ordering {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.iter().map(|&x| self.rank[x]).cmp(b.iter().map(|&x| self.rank[x])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn compare_words() {
        let o = MonomialOrder::from_ascending(&[1, 0]); // y < x with x = 0, y = 1
        assert_eq!(o.compare(&[0], &[1]), Ordering::Greater);
        assert_eq!(o.compare(&[1, 1, 1], &[0]), Ordering::Greater);
        assert_eq!(o.compare(&[0, 1], &[0, 0]), Ordering::Less);
        assert_eq!(o.reversed(), MonomialOrder::identity(2));
        assert_eq!(o.ascending(), vec![1, 0]);
    }

    #[test]
    fn random_is_a_permutation() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let o = MonomialOrder::random(6, &mut rng);
            let mut a = o.ascending();
            a.sort();
            assert_eq!(a, (0..6).collect::<Vec<_>>());
        }
    }
}

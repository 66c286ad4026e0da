use std::collections::VecDeque;

use crate::bits::ElementSet;
use crate::error::{Error, Result};
use crate::matroid::RankOracle;

/// Result of asking for a common independent set of a given size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Intersection {
    /// `|I| = μ`, independent in both matroids.
    Common(ElementSet),
    /// `Z` with `r1(Z) + r2(S \ Z) < μ`.
    Deficient(ElementSet),
}

impl Intersection {
    pub fn common(self) -> Option<ElementSet> {
        match self {
            Intersection::Common(i) => Some(i),
            Intersection::Deficient(_) => None,
        }
    }
}

/// Augmenting-path matroid intersection.
///
/// Paths are shortest in the exchange graph; BFS visits sources and
/// neighbours in increasing element order, so the output is a function of the
/// two rank oracles and `μ` alone.
pub fn matroid_intersection(m1: &dyn RankOracle, m2: &dyn RankOracle, mu: usize) -> Result<Intersection> {
    let ground = m1.ground();
    if ground != m2.ground() {
        return Err(Error::MatroidGroundMismatch);
    }
    if mu > ground.len() {
        return Ok(Intersection::Deficient(ground));
    }
    let elems: Vec<usize> = ground.iter().collect();
    let mut current = ElementSet::empty();
    while current.len() < mu {
        match augmenting_path(m1, m2, &elems, current) {
            Some(path) => {
                for e in path {
                    current = current ^ ElementSet::singleton(e);
                }
                debug_assert!(m1.is_independent(current) && m2.is_independent(current));
            }
            None => {
                let reach = can_reach_sinks(m1, m2, &elems, current);
                return Ok(Intersection::Deficient(minimize(m1, m2, ground, mu, reach)));
            }
        }
    }
    Ok(Intersection::Common(current))
}

/// Exchange arcs out of `from`: `y -> x` when `I - y + x ∈ I1`, `x -> y` when `I - y + x ∈ I2`.
fn arc(m1: &dyn RankOracle, m2: &dyn RankOracle, current: ElementSet, from: usize, to: usize) -> bool {
    match (current.contains(from), current.contains(to)) {
        (true, false) => m1.is_independent(current.without(from).with(to)),
        (false, true) => m2.is_independent(current.without(to).with(from)),
        _ => false,
    }
}

fn augmenting_path(m1: &dyn RankOracle, m2: &dyn RankOracle, elems: &[usize], current: ElementSet) -> Option<Vec<usize>> {
    let outside: Vec<usize> = elems.iter().copied().filter(|&e| !current.contains(e)).collect();
    let sources: Vec<usize> = outside.iter().copied().filter(|&x| m1.is_independent(current.with(x))).collect();
    let sinks: ElementSet = outside.iter().copied().filter(|&x| m2.is_independent(current.with(x))).collect();

    let mut parent = [usize::MAX; 64];
    let mut seen = ElementSet::empty();
    let mut queue = VecDeque::new();
    for &s in &sources {
        seen.insert(s);
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        if sinks.contains(u) {
            let mut path = vec![u];
            let mut v = u;
            while parent[v] != usize::MAX {
                v = parent[v];
                path.push(v);
            }
            path.reverse();
            return Some(path);
        }
        for &w in elems {
            if !seen.contains(w) && arc(m1, m2, current, u, w) {
                seen.insert(w);
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Elements from which some sink is reachable.
fn can_reach_sinks(m1: &dyn RankOracle, m2: &dyn RankOracle, elems: &[usize], current: ElementSet) -> ElementSet {
    let mut reach: ElementSet = elems.iter().copied().filter(|&x| !current.contains(x) && m2.is_independent(current.with(x))).collect();
    let mut queue: VecDeque<usize> = reach.iter().collect();
    while let Some(v) = queue.pop_front() {
        for &u in elems {
            if !reach.contains(u) && arc(m1, m2, current, u, v) {
                reach.insert(u);
                queue.push_back(u);
            }
        }
    }
    reach
}

fn deficiency(m1: &dyn RankOracle, m2: &dyn RankOracle, ground: ElementSet, z: ElementSet) -> usize {
    m1.rank(z) + m2.rank(ground - z)
}

/// Drop elements of `z`, lowest first, while the certificate stays valid.
fn minimize(m1: &dyn RankOracle, m2: &dyn RankOracle, ground: ElementSet, mu: usize, mut z: ElementSet) -> ElementSet {
    debug_assert!(deficiency(m1, m2, ground, z) < mu);
    for e in z.iter().collect::<Vec<_>>() {
        let smaller = z.without(e);
        if deficiency(m1, m2, ground, smaller) < mu {
            z = smaller;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{free, uniform, GenPartitionMatroid, GenPartitionSpec};
    use proptest::prelude::*;

    fn es(items: &[usize]) -> ElementSet {
        items.iter().collect()
    }

    fn partition_matroid(parts: &[&[usize]]) -> GenPartitionMatroid {
        let parts: Vec<ElementSet> = parts.iter().map(|p| es(p)).collect();
        let k = parts.len();
        GenPartitionMatroid::new(GenPartitionSpec { lower: vec![0; k], upper: vec![1; k], size: k, parts }).unwrap()
    }

    #[test]
    fn free_with_free_takes_everything() {
        let g = ElementSet::full(5);
        assert_eq!(matroid_intersection(&free(g), &free(g), 5).unwrap(), Intersection::Common(g));
    }

    #[test]
    fn bipartite_matching() {
        // Edges of K_{2,2}: 0 = a1b1, 1 = a1b2, 2 = a2b1, 3 = a2b2.
        let left = partition_matroid(&[&[0, 1], &[2, 3]]);
        let right = partition_matroid(&[&[0, 2], &[1, 3]]);
        let found = matroid_intersection(&left, &right, 2).unwrap().common().unwrap();
        let perfect: Vec<ElementSet> =
            ElementSet::full(4).subsets().filter(|s| s.len() == 2 && left.is_independent(*s) && right.is_independent(*s)).collect();
        assert_eq!(perfect, vec![es(&[1, 2]), es(&[0, 3])]);
        assert!(perfect.contains(&found));
    }

    #[test]
    fn oversize_request_certifies_whole_ground() {
        let g = ElementSet::full(3);
        assert_eq!(matroid_intersection(&free(g), &free(g), 4).unwrap(), Intersection::Deficient(g));
    }

    #[test]
    fn grounds_must_match() {
        let r = matroid_intersection(&free(ElementSet::full(3)), &free(ElementSet::full(4)), 1);
        assert_eq!(r.unwrap_err(), Error::MatroidGroundMismatch);
    }

    /// Brute maximum common independent set size.
    fn max_common(m1: &dyn RankOracle, m2: &dyn RankOracle) -> usize {
        m1.ground().subsets().filter(|&s| m1.is_independent(s) && m2.is_independent(s)).map(|s| s.len()).max().unwrap_or(0)
    }

    fn random_partition_matroid(n: usize, labels: &[usize], caps: &[usize]) -> GenPartitionMatroid {
        let mut parts = vec![ElementSet::empty(); 3];
        for e in 0..n {
            parts[labels[e]].insert(e);
        }
        let parts: Vec<ElementSet> = parts.into_iter().filter(|p| !p.is_empty()).collect();
        let upper: Vec<usize> = parts.iter().enumerate().map(|(i, p)| caps[i].min(p.len())).collect();
        let size = upper.iter().sum();
        GenPartitionMatroid::new(GenPartitionSpec { lower: vec![0; parts.len()], upper, size, parts }).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn outcome_always_verifies(
            n in 1usize..=7,
            l1 in proptest::collection::vec(0usize..3, 7),
            c1 in proptest::collection::vec(0usize..3, 3),
            k in 0usize..=7,
            mu in 0usize..=8,
        ) {
            let g = ElementSet::full(n);
            let m1 = random_partition_matroid(n, &l1, &c1);
            let m2 = uniform(g, k.min(n)).unwrap();
            let best = max_common(&m1, &m2);
            match matroid_intersection(&m1, &m2, mu).unwrap() {
                Intersection::Common(i) => {
                    prop_assert_eq!(i.len(), mu);
                    prop_assert!(m1.is_independent(i) && m2.is_independent(i));
                }
                Intersection::Deficient(z) => {
                    prop_assert!(z.is_subset(g));
                    prop_assert!(m1.rank(z) + m2.rank(g - z) < mu);
                    prop_assert!(best < mu);
                }
            }
        }

        #[test]
        fn two_partition_matroids_reach_brute_optimum(
            n in 1usize..=7,
            l1 in proptest::collection::vec(0usize..3, 7),
            l2 in proptest::collection::vec(0usize..3, 7),
            c1 in proptest::collection::vec(0usize..3, 3),
            c2 in proptest::collection::vec(0usize..3, 3),
        ) {
            let m1 = random_partition_matroid(n, &l1, &c1);
            let m2 = random_partition_matroid(n, &l2, &c2);
            let best = max_common(&m1, &m2);
            prop_assert!(matroid_intersection(&m1, &m2, best).unwrap().common().is_some());
            prop_assert!(matroid_intersection(&m1, &m2, best + 1).unwrap().common().is_none());
        }
    }
}

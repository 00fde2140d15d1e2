//! Monomorphism search, isomorphism tests and automorphism groups.

use std::ops::ControlFlow;

use super::{Group, Subgroup};

/// `(outer ∘ inner)[x] = outer[inner[x]]`.
pub fn compose_maps(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&y| outer[y]).collect()
}

/// Inverse of a bijection given by images.
pub fn invert_map(map: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; map.len()];
    for (x, &y) in map.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

struct Search<'a> {
    src: &'a Group,
    dst: &'a Group,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    injective: bool,
}

impl Search<'_> {
    fn new<'a>(src: &'a Group, dst: &'a Group, injective: bool) -> Search<'a> {
        let gens = src.small_generating_set();
        let candidates = gens
            .iter()
            .map(|&g| {
                let ord = src.element_order(g);
                dst.elements()
                    .filter(|&y| {
                        let o = dst.element_order(y);
                        if injective {
                            o == ord
                        } else {
                            ord % o == 0
                        }
                    })
                    .collect()
            })
            .collect();
        Search { src, dst, gens, candidates, injective }
    }

    /// Extends the partial map on `⟨gens[..k]⟩` by `gens[k] ↦ y`; returns
    /// `None` on an inconsistency or a collision of images.
    fn extend(&self, map: &[usize], used: &[bool], k: usize, y: usize) -> Option<(Vec<usize>, Vec<bool>)> {
        const UNSET: usize = usize::MAX;
        let mut map = map.to_vec();
        let mut used = used.to_vec();
        let images: Vec<usize> = (0..=k).map(|j| if j == k { y } else { map[self.gens[j]] }).collect();
        let mut queue: Vec<usize> = (0..self.src.order()).filter(|&x| map[x] != UNSET).collect();
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (j, &img) in images.iter().enumerate() {
                let xg = self.src.mul(x, self.gens[j]);
                let target = self.dst.mul(map[x], img);
                if map[xg] == UNSET {
                    if self.injective && used[target] {
                        return None;
                    }
                    used[target] = true;
                    map[xg] = target;
                    queue.push(xg);
                } else if map[xg] != target {
                    return None;
                }
            }
        }
        Some((map, used))
    }

    fn run<F: FnMut(&[usize]) -> ControlFlow<()>>(&self, visit: &mut F) {
        let mut map = vec![usize::MAX; self.src.order()];
        map[0] = 0;
        let mut used = vec![false; self.dst.order()];
        used[0] = true;
        let _ = self.recurse(0, &map, &used, visit);
    }

    fn recurse<F: FnMut(&[usize]) -> ControlFlow<()>>(
        &self,
        k: usize,
        map: &[usize],
        used: &[bool],
        visit: &mut F,
    ) -> ControlFlow<()> {
        if k == self.gens.len() {
            return visit(map);
        }
        for &y in &self.candidates[k] {
            if let Some((m, u)) = self.extend(map, used, k, y) {
                self.recurse(k + 1, &m, &u, visit)?;
            }
        }
        ControlFlow::Continue(())
    }
}

/// All injective homomorphisms `src → dst` as image tabulations, sorted.
pub fn monomorphisms(src: &Group, dst: &Group) -> Vec<Vec<usize>> {
    if dst.order() % src.order() != 0 {
        return Vec::new();
    }
    let search = Search::new(src, dst, true);
    let mut out = Vec::new();
    search.run(&mut |m: &[usize]| {
        out.push(m.to_vec());
        ControlFlow::Continue(())
    });
    out.sort();
    out
}

/// All homomorphisms `src → dst` as image tabulations, sorted.
pub fn homomorphisms(src: &Group, dst: &Group) -> Vec<Vec<usize>> {
    let search = Search::new(src, dst, false);
    let mut out = Vec::new();
    search.run(&mut |m: &[usize]| {
        out.push(m.to_vec());
        ControlFlow::Continue(())
    });
    out.sort();
    out
}

pub fn find_isomorphism(a: &Group, b: &Group) -> Option<Vec<usize>> {
    if a.order() != b.order() || a.order_profile() != b.order_profile() {
        return None;
    }
    let search = Search::new(a, b, true);
    let mut found = None;
    search.run(&mut |m: &[usize]| {
        found = Some(m.to_vec());
        ControlFlow::Break(())
    });
    found
}

pub fn is_isomorphic(a: &Group, b: &Group) -> bool {
    find_isomorphism(a, b).is_some()
}

/// Automorphisms, inner automorphisms and the outer automorphism group.
#[derive(Clone, Debug)]
pub struct AutOut {
    /// Sorted by tabulation; the identity comes first.
    pub auts: Vec<Vec<usize>>,
    /// Indices into `auts` of the inner automorphisms.
    pub inner: Vec<usize>,
    /// Outer class of each automorphism.
    pub out_class: Vec<usize>,
    /// Smallest automorphism in each outer class.
    pub section: Vec<usize>,
    /// Out(H), element `i` being outer class `i`; the product is composition.
    pub out: Group,
}

impl AutOut {
    pub fn new(h: &Group) -> Self {
        let auts = monomorphisms(h, h);
        let index = |a: &[usize]| auts.binary_search_by(|b| b.as_slice().cmp(a)).expect("automorphisms are closed");
        let mut inner: Vec<usize> = h
            .elements()
            .map(|x| {
                let c: Vec<usize> = h.elements().map(|u| h.conj(x, u)).collect();
                index(&c)
            })
            .collect();
        inner.sort_unstable();
        inner.dedup();
        let mut out_class = vec![usize::MAX; auts.len()];
        let mut section = Vec::new();
        for a in 0..auts.len() {
            if out_class[a] != usize::MAX {
                continue;
            }
            let cls = section.len();
            section.push(a);
            for &i in &inner {
                out_class[index(&compose_maps(&auts[a], &auts[i]))] = cls;
            }
        }
        let m = section.len();
        let table: Vec<Vec<usize>> = (0..m)
            .map(|x| (0..m).map(|y| out_class[index(&compose_maps(&auts[section[x]], &auts[section[y]]))]).collect())
            .collect();
        let out = Group::from_table(&table).expect("Out(H) is a group");
        Self { auts, inner, out_class, section, out }
    }

    pub fn index_of(&self, aut: &[usize]) -> Option<usize> {
        self.auts.binary_search_by(|b| b.as_slice().cmp(aut)).ok()
    }

    pub fn aut_order(&self) -> usize {
        self.auts.len()
    }

    pub fn out_order(&self) -> usize {
        self.section.len()
    }
}

impl Group {
    pub fn aut_out(&self) -> AutOut {
        AutOut::new(self)
    }

    /// Automorphisms of `self` that preserve subgroup `h` setwise.
    pub fn stabilizes(&self, aut: &[usize], h: &Subgroup) -> bool {
        h.elements().iter().all(|&x| h.contains(aut[x]))
    }
}

#[cfg(test)]
mod tests {
    use super::super::library::by_name;
    use super::*;

    fn brute_force_homs(src: &Group, dst: &Group) -> usize {
        // Enumerate all maps on a small source and count injective homomorphisms.
        let n = src.order();
        let m = dst.order();
        let mut count = 0;
        let mut map = vec![0usize; n];
        loop {
            if src.is_monomorphism(dst, &map) {
                count += 1;
            }
            let mut i = 0;
            while i < n {
                map[i] += 1;
                if map[i] < m {
                    break;
                }
                map[i] = 0;
                i += 1;
            }
            if i == n {
                return count;
            }
        }
    }

    #[test]
    fn mono_counts() {
        let c2 = Group::cyclic(2);
        let c3 = Group::cyclic(3);
        assert!(monomorphisms(&c2, &c3).is_empty());
        assert_eq!(monomorphisms(&c2, &c2), vec![vec![0, 1]]);
        let s3 = by_name("S3").unwrap();
        assert_eq!(monomorphisms(&c3, &s3).len(), 2);
        assert_eq!(monomorphisms(&c3, &s3).len(), brute_force_homs(&c3, &s3));
        let v4 = by_name("V4").unwrap();
        assert_eq!(monomorphisms(&v4, &by_name("D8").unwrap()).len(), brute_force_homs(&v4, &by_name("D8").unwrap()));
        assert_eq!(monomorphisms(&c2, &s3).len(), 3);
    }

    #[test]
    fn aut_out_examples() {
        let c3 = Group::cyclic(3);
        let a = c3.aut_out();
        assert_eq!((a.aut_order(), a.out_order()), (2, 2));
        let d8 = by_name("D8").unwrap().aut_out();
        assert_eq!((d8.aut_order(), d8.out_order()), (8, 2));
        let q8 = by_name("Q8").unwrap().aut_out();
        assert_eq!((q8.aut_order(), q8.out_order()), (24, 6));
        assert!(!q8.out.is_abelian());
        let v4 = by_name("V4").unwrap().aut_out();
        assert_eq!((v4.aut_order(), v4.out_order()), (6, 6));
    }

    #[test]
    fn inner_matches_center_quotient() {
        for name in ["S3", "D8", "Q8", "A4", "S4", "C4"] {
            let g = by_name(name).unwrap();
            let a = g.aut_out();
            assert_eq!(a.inner.len() * g.center().order(), g.order(), "{name}");
            assert_eq!(a.auts[0], (0..g.order()).collect::<Vec<_>>());
            for aut in &a.auts {
                assert!(g.is_monomorphism(&g, aut));
            }
            assert_eq!(a.section[a.out_class[0]], 0);
        }
    }

    #[test]
    fn isomorphism_detection() {
        let v4 = by_name("V4").unwrap();
        let prod = Group::direct_product(&Group::cyclic(2), &Group::cyclic(2));
        let iso = find_isomorphism(&v4, &prod).unwrap();
        assert!(v4.is_monomorphism(&prod, &iso));
        assert!(!is_isomorphic(&Group::cyclic(4), &v4));
        assert!(!is_isomorphic(&by_name("D8").unwrap(), &by_name("Q8").unwrap()));
        assert!(is_isomorphic(&by_name("S3").unwrap(), &by_name("S3").unwrap()));
    }

    #[test]
    fn homomorphism_counts() {
        let s3 = by_name("S3").unwrap();
        // Hom(S3, C2): trivial and sign.
        assert_eq!(homomorphisms(&s3, &Group::cyclic(2)).len(), 2);
        // Hom(C4, V4): a generator may go anywhere.
        assert_eq!(homomorphisms(&Group::cyclic(4), &by_name("V4").unwrap()).len(), 4);
        // Hom(S3, S3): 6 automorphisms, 3 maps onto order-2 subgroups, 1 trivial.
        assert_eq!(homomorphisms(&s3, &s3).len(), 10);
    }

    #[test]
    fn map_helpers() {
        let a = vec![1, 2, 0];
        assert_eq!(compose_maps(&a, &invert_map(&a)), vec![0, 1, 2]);
    }
}

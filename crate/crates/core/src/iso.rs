//! Isomorphism of delta-matroids by backtracking over ground-set bijections.

use crate::dm::DeltaMatroid;
use crate::subset::{ElementId, Family, Subset};

/// Label-independent profile of an element: entry `k` counts the feasible
/// sets of size `k` that contain it.
fn element_profile(d: &DeltaMatroid, e: ElementId) -> Vec<u32> {
    let mut counts = vec![0; d.n() + 1];
    for f in d.feasible_sets().filter(|f| f.contains(e)) {
        counts[f.len()] += 1;
    }
    counts
}

fn size_histogram(d: &DeltaMatroid) -> Vec<u32> {
    let mut counts = vec![0; d.n() + 1];
    for f in d.feasible_sets() {
        counts[f.len()] += 1;
    }
    counts
}

/// A bijection `perm` with `from.permute(&perm) == to`, or `None`.
pub fn is_isomorphic(from: &DeltaMatroid, to: &DeltaMatroid) -> Option<Vec<ElementId>> {
    let n = from.n();
    if n != to.n() || from.family().len() != to.family().len() || size_histogram(from) != size_histogram(to) {
        return None;
    }
    let from_profiles: Vec<Vec<u32>> = (0..n).map(|e| element_profile(from, e)).collect();
    let to_profiles: Vec<Vec<u32>> = (0..n).map(|e| element_profile(to, e)).collect();
    let mut sorted_from = from_profiles.clone();
    let mut sorted_to = to_profiles.clone();
    sorted_from.sort();
    sorted_to.sort();
    if sorted_from != sorted_to {
        return None;
    }
    let candidates: Vec<Vec<ElementId>> = from_profiles.iter().map(|p| (0..n).filter(|&t| &to_profiles[t] == p).collect()).collect();
    let mut perm = vec![0; n];
    extend(from.family(), to.family(), &candidates, &mut perm, 0, Subset::EMPTY).then_some(perm)
}

/// Assigns an image to element `depth`, checking every subset of the
/// assigned prefix that contains it.
fn extend(from: &Family, to: &Family, candidates: &[Vec<ElementId>], perm: &mut [ElementId], depth: usize, used: Subset) -> bool {
    if depth == perm.len() {
        return true;
    }
    let prefix = Subset::full(depth);
    for &image in &candidates[depth] {
        if used.contains(image) {
            continue;
        }
        perm[depth] = image;
        let consistent = (0..(1u32 << depth)).all(|low| {
            let s = Subset::from_bits(low) & prefix;
            let s = s.with(depth);
            from.contains(s) == to.contains(s.permute(&perm[..=depth]))
        });
        if consistent && extend(from, to, candidates, perm, depth + 1, used.with(image)) {
            return true;
        }
    }
    false
}

/// Canonical representative of the isomorphism class: elements are ordered
/// by profile, and ties are broken by the least relabeled family.
pub fn isomorphism_code(d: &DeltaMatroid) -> Family {
    let n = d.n();
    let profiles: Vec<Vec<u32>> = (0..n).map(|e| element_profile(d, e)).collect();
    let mut order: Vec<ElementId> = (0..n).collect();
    order.sort_by(|&a, &b| profiles[a].cmp(&profiles[b]));
    // Cells of equal profile, as runs of positions in `order`.
    let mut cells = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || profiles[order[i]] != profiles[order[start]] {
            cells.push(start..i);
            start = i;
        }
    }
    let mut best: Option<Family> = None;
    let mut perm = vec![0; n];
    permute_cells(&cells, 0, &mut order, &mut perm, &mut |perm| {
        let image = d.family().permute(perm);
        if best.as_ref().is_none_or(|b| image < *b) {
            best = Some(image);
        }
    });
    best.unwrap_or_else(|| d.family().clone())
}

fn permute_cells(
    cells: &[std::ops::Range<usize>],
    cell: usize,
    order: &mut [ElementId],
    perm: &mut [ElementId],
    visit: &mut dyn FnMut(&[ElementId]),
) {
    let Some(range) = cells.get(cell) else {
        for (pos, &e) in order.iter().enumerate() {
            perm[e] = pos;
        }
        visit(perm);
        return;
    };
    heap_permutations(&mut order[range.clone()].to_vec(), range.len(), &mut |arrangement| {
        order[range.clone()].copy_from_slice(arrangement);
        permute_cells(cells, cell + 1, order, perm, visit);
    });
}

/// Heap's algorithm.
fn heap_permutations(items: &mut Vec<ElementId>, k: usize, visit: &mut dyn FnMut(&[ElementId])) {
    if k <= 1 {
        visit(items);
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(items, k - 1, visit);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
    heap_permutations(items, k - 1, visit);
}

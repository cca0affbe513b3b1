//! Exact isomorphism testing by individualization and colour refinement.
//!
//! Both graphs are refined jointly so colour numbers stay comparable; a
//! mismatch in the colour histograms prunes the branch. Intended for the
//! orders that appear in this crate (up to a few dozen vertices).

use crate::graph::Graph;

/// Returns `map` with `map[v]` the image in `h` of vertex `v` of `g`.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return None;
    }
    if g.degree_profile().degrees != h.degree_profile().degrees {
        return None;
    }
    let n = g.order();
    search(g, h, vec![0; n], vec![0; n])
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    find_isomorphism(g, h).is_some()
}

fn search(g: &Graph, h: &Graph, mut cg: Vec<u32>, mut ch: Vec<u32>) -> Option<Vec<usize>> {
    if !refine(g, &mut cg, h, &mut ch) {
        return None;
    }
    let n = g.order();
    let classes = class_sizes(&cg);
    let target = classes
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > 1)
        .min_by_key(|(_, &s)| s)
        .map(|(c, _)| c as u32);
    let Some(color) = target else {
        let mut by_color = vec![usize::MAX; n];
        for (w, &c) in ch.iter().enumerate() {
            by_color[c as usize] = w;
        }
        let map: Vec<usize> = cg.iter().map(|&c| by_color[c as usize]).collect();
        return is_isomorphism(g, h, &map).then_some(map);
    };
    let v = cg.iter().position(|&c| c == color)?;
    let fresh = classes.len() as u32;
    for w in (0..n).filter(|&w| ch[w] == color) {
        let mut cg2 = cg.clone();
        let mut ch2 = ch.clone();
        cg2[v] = fresh;
        ch2[w] = fresh;
        if let Some(map) = search(g, h, cg2, ch2) {
            return Some(map);
        }
    }
    None
}

fn class_sizes(colors: &[u32]) -> Vec<usize> {
    let k = colors.iter().copied().max().map_or(0, |c| c as usize + 1);
    let mut sizes = vec![0; k];
    for &c in colors {
        sizes[c as usize] += 1;
    }
    sizes
}

fn signature(g: &Graph, colors: &[u32], v: usize) -> Vec<u32> {
    let mut sig: Vec<u32> = g.neighbors(v).map(|u| colors[u]).collect();
    sig.sort_unstable();
    sig.insert(0, colors[v]);
    sig
}

/// Joint equitable refinement. Returns `false` when the colour histograms of
/// the two graphs diverge.
fn refine(g: &Graph, cg: &mut [u32], h: &Graph, ch: &mut [u32]) -> bool {
    let n = g.order();
    let mut count = class_sizes(cg).len();
    loop {
        let sg: Vec<Vec<u32>> = (0..n).map(|v| signature(g, cg, v)).collect();
        let sh: Vec<Vec<u32>> = (0..n).map(|v| signature(h, ch, v)).collect();
        let mut all: Vec<&Vec<u32>> = sg.iter().chain(sh.iter()).collect();
        all.sort_unstable();
        all.dedup();
        let index = |s: &Vec<u32>| all.binary_search(&s).expect("signature present") as u32;
        for v in 0..n {
            cg[v] = index(&sg[v]);
            ch[v] = index(&sh[v]);
        }
        if class_sizes(cg) != class_sizes(ch) {
            return false;
        }
        if all.len() == count {
            return true;
        }
        count = all.len();
    }
}

fn is_isomorphism(g: &Graph, h: &Graph, map: &[usize]) -> bool {
    let n = g.order();
    (0..n).all(|i| ((i + 1)..n).all(|j| g.has_edge(i, j) == h.has_edge(map[i], map[j])))
}

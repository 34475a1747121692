// SPDX-License-Identifier: Apache-2.0

use super::{GraphError, LabeledDigraph, SimpleGraph};
use crate::scalar::Scalar;

pub const TOSI_DIM: usize = 12;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Intra = 0,
    Inter = 1,
    Heter = 2,
}

fn mode_of(cv: &str, cu: &str, cw: &str) -> Option<Mode> {
    if cu == cw {
        Some(if cu == cv { Mode::Intra } else { Mode::Inter })
    } else if cu != cv && cw != cv {
        Some(Mode::Heter)
    } else {
        None
    }
}

/// Type-restricted clustering profile. Bases (mean local, global
/// transitivity, Barrat-weighted, Zhang–Horvath-weighted) are major and
/// modes (intra, inter, heter) minor: entry `3 * basis + mode`.
///
/// `class_of` receives vertex index and label and must return the vertex's
/// class code.
pub fn typed_cluster_vector<T, F>(g: &LabeledDigraph<T>, class_of: F) -> Result<Vec<T>, GraphError>
where
    T: Scalar,
    F: Fn(usize, &str) -> Option<String>,
{
    let n = g.vertex_count();
    let classes: Vec<String> = (0..n)
        .map(|v| {
            class_of(v, g.label(v)).ok_or_else(|| GraphError::MissingClass(g.label(v).to_string()))
        })
        .collect::<Result<_, _>>()?;
    let s = SimpleGraph::from_digraph(g);
    let max = s
        .max_weight()
        .filter(|m| *m > T::zero())
        .unwrap_or_else(T::one);
    let w = |u: usize, x: usize| s.weight(u, x).unwrap_or_else(T::zero) / max;

    let mut ws = [T::zero(); 3];
    let mut closed = [0usize; 3];
    let mut wedges = 0usize;
    let mut bbpv = [T::zero(); 3];
    let mut zh = [T::zero(); 3];
    for v in 0..n {
        let nb = s.neighbors(v);
        let d = nb.len();
        if d < 2 {
            continue;
        }
        wedges += d * (d - 1) / 2;
        let mut count = [0usize; 3];
        let mut barrat = [T::zero(); 3];
        let mut triple = [T::zero(); 3];
        for (i, &u) in nb.iter().enumerate() {
            for &x in &nb[i + 1..] {
                if !s.has_edge(u, x) {
                    continue;
                }
                let Some(m) = mode_of(&classes[v], &classes[u], &classes[x]) else {
                    continue;
                };
                let m = m as usize;
                count[m] += 1;
                barrat[m] = barrat[m] + w(v, u) + w(v, x);
                triple[m] = triple[m] + w(v, u) * w(u, x) * w(x, v);
            }
        }
        let pairs = T::from_count(d * (d - 1));
        let strength: T = nb.iter().map(|&u| w(v, u)).sum();
        let sq: T = nb.iter().map(|&u| w(v, u) * w(v, u)).sum();
        let zh_den = strength * strength - sq;
        let barrat_den = strength * T::from_count(d - 1);
        for m in 0..3 {
            closed[m] += count[m];
            ws[m] = ws[m] + T::from_count(2 * count[m]) / pairs;
            if barrat_den > T::zero() {
                bbpv[m] = bbpv[m] + barrat[m] / barrat_den;
            }
            if zh_den > T::zero() {
                zh[m] = zh[m] + T::lit(2.0) * triple[m] / zh_den;
            }
        }
    }

    let mut out = vec![T::zero(); TOSI_DIM];
    if n == 0 {
        return Ok(out);
    }
    let nf = T::from_count(n);
    for m in 0..3 {
        out[m] = ws[m] / nf;
        out[3 + m] = if wedges == 0 {
            T::zero()
        } else {
            T::from_count(closed[m]) / T::from_count(wedges)
        };
        out[6 + m] = bbpv[m] / nf;
        out[9 + m] = zh[m] / nf;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::test_graphs::undirected;
    use super::*;
    use crate::graph::GraphBuilder;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::collections::HashMap;

    fn classes(map: &[(&str, &str)]) -> impl Fn(usize, &str) -> Option<String> {
        let m: HashMap<String, String> = map
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        move |_, l| m.get(l).cloned()
    }

    fn triangle() -> LabeledDigraph<f64> {
        undirected(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")])
    }

    #[test]
    fn single_class_triangle_is_fully_intra() {
        let v = typed_cluster_vector(&triangle(), classes(&[("a", "X"), ("b", "X"), ("c", "X")]))
            .unwrap();
        assert_eq!(
            v,
            vec![1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0]
        );
    }

    #[test]
    fn three_class_triangle_is_fully_heter() {
        let v = typed_cluster_vector(&triangle(), classes(&[("a", "X"), ("b", "Y"), ("c", "Z")]))
            .unwrap();
        assert_eq!(v[0..3], [0.0, 0.0, 1.0]);
        assert_eq!(v[3..6], [0.0, 0.0, 1.0]);
    }

    #[test]
    fn two_class_triangle_splits_inter_and_none() {
        // at a and b the opposite pair is {b|a, c}: mixed, no mode; at c the pair {a,b} is inter
        let v = typed_cluster_vector(&triangle(), classes(&[("a", "X"), ("b", "X"), ("c", "Y")]))
            .unwrap();
        assert_abs_diff_eq!(v[1], 1.0 / 3.0);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[2], 0.0);
        assert_abs_diff_eq!(v[4], 1.0 / 3.0);
    }

    #[test]
    fn edge_only_graph_is_zero() {
        let g = undirected(&["a", "b"], &[("a", "b")]);
        let v = typed_cluster_vector(&g, |_, _| Some("X".into())).unwrap();
        assert_eq!(v, vec![0.0; TOSI_DIM]);
    }

    #[test]
    fn missing_class_is_an_error() {
        assert!(matches!(
            typed_cluster_vector(&triangle(), classes(&[("a", "X")])),
            Err(GraphError::MissingClass(_))
        ));
    }

    #[test]
    fn weighted_bases_by_hand() {
        // triangle a,b,c with weights ab=2, bc=1, ca=1 plus pendant d on a (weight 2)
        let mut b = GraphBuilder::<f64>::new();
        for l in ["a", "b", "c", "d"] {
            b.add_vertex(l, 1.0).unwrap();
        }
        for (s, t, w) in [(0, 1, 2.0), (1, 2, 1.0), (2, 0, 1.0), (0, 3, 2.0)] {
            b.add_arc(s, t, w, "x").unwrap();
            b.add_arc(t, s, w, "x").unwrap();
        }
        let v = typed_cluster_vector(&b.build(), |_, _| Some("X".into())).unwrap();
        // normalized: ab=1, bc=.5, ca=.5, ad=1
        // Barrat a: s=2.5, d=3, closed pair (b,c): (1+.5)/(2.5*2) = .3
        //        b: s=1.5, d=2: (1+.5)/(1.5*1) = 1 ; c: s=1, (.5+.5)/1 = 1
        assert_abs_diff_eq!(v[6], (0.3 + 1.0 + 1.0) / 4.0, epsilon = 1e-12);
        // ZH a: 2*(1*.5*.5)/(2.5^2 - 2.25) = .5/4 ; b: 2*.25/(2.25-1.25)=.5 ; c: .5/(1-.5)=1
        assert_abs_diff_eq!(v[9], (0.125 + 0.5 + 1.0) / 4.0, epsilon = 1e-12);
        // global: 3 closed over 3 + 1 + 1 wedges
        assert_abs_diff_eq!(v[3], 3.0 / 5.0, epsilon = 1e-12);
    }

    proptest! {
        #[test]
        fn single_class_intra_is_watts_strogatz(
            raw in proptest::collection::vec((0usize..7, 0usize..7), 0..20),
            split in proptest::collection::vec(0u8..3, 7),
        ) {
            let mut b = GraphBuilder::<f64>::new();
            for i in 0..7 { b.add_vertex(format!("v{i}"), 1.0).unwrap(); }
            let mut seen = std::collections::HashSet::new();
            for (s, t) in raw { if seen.insert((s, t)) { b.add_arc(s, t, 1.0, "x").unwrap(); } }
            let g = b.build();
            let one = typed_cluster_vector(&g, |_, _| Some("X".into())).unwrap();
            let ws = crate::graph::netsimile_features(&g)[6];
            prop_assert!((one[0] - ws).abs() < 1e-12);
            prop_assert_eq!(one[1], 0.0);
            prop_assert_eq!(one[2], 0.0);

            let mixed = typed_cluster_vector(&g, |v, _| Some(split[v].to_string())).unwrap();
            for basis in 0..4 {
                let total: f64 = mixed[3 * basis..3 * basis + 3].iter().sum();
                prop_assert!(total <= one[3 * basis] + 1e-12);
            }
        }
    }
}

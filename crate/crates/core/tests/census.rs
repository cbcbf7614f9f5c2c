use std::collections::BTreeSet;

use gshds::galgebra::{check_gshds, AlgebraElement};
use gshds::galois::paley_gshds;
use gshds::pgroup::make_group;
use gshds::qrs::{qrs_decode, search, QrsContext, SearchConfig, SearchMode};

/// Every invertible 3x3 matrix over F_3, as row-major entries.
fn gl3_f3() -> Vec<[u64; 9]> {
    let mut out = Vec::new();
    for code in 0..3u64.pow(9) {
        let mut m = [0u64; 9];
        let mut c = code;
        for x in m.iter_mut() {
            *x = c % 3;
            c /= 3;
        }
        let e = |i: usize| m[i] as i64;
        let det = e(0) * (e(4) * e(8) - e(5) * e(7)) - e(1) * (e(3) * e(8) - e(5) * e(6)) + e(2) * (e(3) * e(7) - e(4) * e(6));
        if det.rem_euclid(3) != 0 {
            out.push(m);
        }
    }
    out
}

/// The (Z/3)^3 census count equals the size of the GL(3,3) orbit of the
/// Paley set, computed here by brute force without the orbit machinery.
#[test]
fn census_matches_linear_images_of_paley() {
    let g = make_group(3, &[1, 1, 1]).unwrap();
    let paley = paley_gshds(3, 3).unwrap();
    let pts: Vec<Vec<u64>> = paley.support().map(|x| g.element(x).coords).collect();
    let gl = gl3_f3();
    assert_eq!(gl.len(), 11232);
    let mut images = BTreeSet::new();
    for m in &gl {
        let mut set: Vec<usize> = pts
            .iter()
            .map(|v| {
                let w: Vec<i64> = (0..3).map(|i| ((0..3).map(|j| m[3 * i + j] * v[j]).sum::<u64>() % 3) as i64).collect();
                g.index(&g.element_from(&w).unwrap()).unwrap()
            })
            .collect();
        set.sort_unstable();
        images.insert(set);
    }
    let ctx = QrsContext::new(&g).unwrap();
    let rep = search(&ctx, &SearchConfig { verify_all: true, ..Default::default() }).unwrap();
    assert!(rep.complete);
    assert_eq!(rep.disagreements, 0);
    let hits: BTreeSet<Vec<usize>> = rep.hits.iter().map(|h| qrs_decode(&ctx, h).unwrap().support().collect()).collect();
    assert_eq!(hits.len(), images.len());
    assert_eq!(hits, images);
    assert_eq!(hits.len(), 288);
}

#[test]
fn pruned_census_agrees() {
    let ctx = QrsContext::new(&make_group(3, &[1, 1, 1]).unwrap()).unwrap();
    let a = search(&ctx, &SearchConfig::default()).unwrap();
    let b = search(&ctx, &SearchConfig { mode: SearchMode::Pruned, jobs: 3, ..Default::default() }).unwrap();
    assert_eq!(a.hits, b.hits);
    assert!(b.complete);
}

/// Every census hit passes the convolution test when rebuilt as a plain set.
#[test]
fn hits_are_difference_sets() {
    let ctx = QrsContext::new(&make_group(3, &[1, 1, 1]).unwrap()).unwrap();
    let rep = search(&ctx, &SearchConfig::default()).unwrap();
    for h in &rep.hits {
        let d = qrs_decode(&ctx, h).unwrap();
        let e = AlgebraElement::indicator(&ctx.group, &d.support().collect::<Vec<_>>());
        assert!(check_gshds(&e, ctx.n0()).unwrap().is_gshds());
    }
}

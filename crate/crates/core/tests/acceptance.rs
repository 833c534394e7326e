//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails. Pass criterion numbers as arguments to run a subset.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use superpat_core::geometry::{universal_pointset_len, ExactPoint};
use superpat_core::perm::{all_permutations, enumerate_class, is_embedding, perm, Permutation};
use superpat_core::plane_graph::{
    all_maximal_plane_graphs, canonical_order, outer_path_history, random_connected_plane_graph,
    random_maximal_plane_graph,
};
use superpat_core::strahler::{is_tree_augmented, tree_augmented_with_bound};
use superpat_core::superpattern::{
    embed_213_132, embed_213_3412, embed_into_mu, embed_into_strahler_superpattern, embed_unimodal, mu_len,
    strahler_superpattern, superpattern_213_132, superpattern_213_3412, unimodal_superpattern,
};
use superpat_core::{
    cperm, draw, minimal_superpattern_length, mu, orientation, recanonize, segments_cross, stretchperm,
    strahler_of_tree, strahler_upper_bound, tree_augment, triangulate, universal_pointset, zeta, Budget, PlaneGraph, RootedTree,
};

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `8 × (m²/4 + m + ((−1)^m − 1)/8)`, exact.
fn eight_times_size(m: usize) -> i64 {
    let m = m as i64;
    let sign = if m % 2 == 0 { 1 } else { -1 };
    2 * m * m + 8 * m + sign - 1
}

/// Containment by brute force over position subsets.
fn oracle_contains(hay: &Permutation, needle: &Permutation) -> bool {
    hay.contains(needle).is_some_and(|pos| is_embedding(hay, needle, &pos))
}

fn c1() -> Result<String, String> {
    for n in 1..=200 {
        ensure(8 * mu_len(n) as i64 == eight_times_size(n), || format!("|mu_{n}| = {}", mu_len(n)))?;
        ensure(mu(n).len() == mu_len(n), || format!("mu({n}) has length {}", mu(n).len()))?;
    }
    Ok("sizes for n = 1..200".into())
}

fn c2() -> Result<String, String> {
    let mut total = 0;
    for n in 1..=8 {
        let sp = mu(n);
        for p in enumerate_class(n, &[perm("213")]) {
            let pos = embed_into_mu(&p, n).map_err(|e| format!("{p}: {e}"))?;
            ensure(is_embedding(&sp, &p, &pos), || format!("{p} witness {pos:?}"))?;
            ensure(oracle_contains(&sp, &p), || format!("{p} not found by the generic oracle"))?;
            total += 1;
        }
    }
    Ok(format!("{total} members embedded, 1430 at n = 8"))
}

fn c3() -> Result<String, String> {
    let want = [1, 3, 5, 8, 11];
    let mut parts = Vec::new();
    for (n, &w) in (1..=5).zip(&want) {
        let r = minimal_superpattern_length(&[perm("213")], n, Budget::unlimited());
        ensure(r.answer() == Some(w), || format!("n = {n}: {:?}", r.outcome))?;
        parts.push(format!("n={n}:{w} ({:.1}s)", r.seconds));
    }
    Ok(format!("{}; n = 6 is the ignored long test", parts.join(" ")))
}

fn c4() -> Result<String, String> {
    for n in 1..=12 {
        let sp = unimodal_superpattern(n);
        ensure(sp.len() == 2 * n - 1, || format!("unimodal length at n = {n}"))?;
        let members = enumerate_class(n, &[perm("213"), perm("312")]);
        ensure(members.len() == 1 << (n - 1), || format!("{} unimodal members at n = {n}", members.len()))?;
        for p in &members {
            let pos = embed_unimodal(p, n).map_err(|e| e.to_string())?;
            ensure(is_embedding(&sp, p, &pos), || format!("unimodal {p}"))?;
        }
    }
    for n in 1..=9 {
        let sp = superpattern_213_132(n);
        let z = zeta(n as u64) as usize;
        let bound = n as f64 * (n as f64).log2() + n as f64;
        ensure(sp.len() == z && z as f64 <= bound, || format!("xi-diagonal length {} at n = {n}", sp.len()))?;
        for p in enumerate_class(n, &[perm("213"), perm("132")]) {
            let pos = embed_213_132(&p, n).map_err(|e| e.to_string())?;
            ensure(is_embedding(&sp, &p, &pos) && oracle_contains(&sp, &p), || format!("(213,132) {p}"))?;
        }
    }
    for n in 3..=9 {
        let sp = superpattern_213_3412(n).map_err(|e| e.to_string())?;
        ensure(sp.len() == 3 * n - 4, || format!("3n-4 length {} at n = {n}", sp.len()))?;
        for p in enumerate_class(n, &[perm("213"), perm("3412")]) {
            let pos = embed_213_3412(&p, n).map_err(|e| e.to_string())?;
            ensure(is_embedding(&sp, &p, &pos) && oracle_contains(&sp, &p), || format!("(213,3412) {p}"))?;
        }
    }
    let four = [perm("213"), perm("132"), perm("3412"), perm("4231")];
    for n in 3..=4 {
        let r = minimal_superpattern_length(&four, n, Budget::unlimited());
        ensure(r.answer() == Some(3 * n - 4), || format!("four-pattern class at n = {n}: {:?}", r.outcome))?;
    }
    Ok("unimodal n <= 12, xi-diagonal n <= 9, 3n-4 n <= 9, optimality n = 3, 4".into())
}

fn c5() -> Result<String, String> {
    for n in 1..=100_000u64 {
        let z = zeta(n) as f64;
        let l = (n as f64).log2() * n as f64;
        let (lo, hi) = (l - 2.0 * n as f64, l + n as f64 + 1e-6);
        ensure(lo < z && z <= hi, || format!("zeta({n}) = {z}"))?;
    }
    for k in 0..=16u64 {
        let n = 1u64 << k;
        ensure(zeta(n) == n * (k + 1), || format!("zeta(2^{k}) = {}", zeta(n)))?;
    }
    Ok("bounds for n <= 100000, equality at 2^0..2^16".into())
}

fn c6() -> Result<String, String> {
    let mut checked = 0u64;
    for n in 1..=7 {
        let q = BigInt::from(n as u64);
        for s in all_permutations(n) {
            let p: Vec<ExactPoint> = stretchperm(&s).map_err(|e| e.to_string())?;
            let v = s.values();
            for i in 0..n {
                for j in 0..n {
                    if v[i] < v[j] {
                        let dx = BigInt::from((i as i64 - j as i64).abs());
                        let dy = (p[j].y() - p[i].y()).abs();
                        let lo = q.pow(v[j] as u32 - 1) * &dx;
                        let hi = q.pow(v[j] as u32) * &dx;
                        ensure(lo <= dy && dy < hi, || format!("slope {s} ({i},{j})"))?;
                    }
                    for k in 0..n {
                        if i < j && v[i].max(v[j]) < v[k] {
                            ensure(orientation(&p[i], &p[k], &p[j]) == -1, || format!("orientation {s} {i} {j} {k}"))?;
                            checked += 1;
                        }
                    }
                }
            }
            for k in 0..n {
                for h in 0..n {
                    for j in h + 1..n {
                        for i in 0..n {
                            if [h, j, k].contains(&i) || h == k || j == k || v[h].max(v[i]).max(v[j]) >= v[k] {
                                continue;
                            }
                            let want = h < i && i < j && v[h].max(v[j]) > v[i];
                            ensure(segments_cross(&p[h], &p[j], &p[i], &p[k]) == want, || {
                                format!("crossing {s} h={h} i={i} j={j} k={k}")
                            })?;
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("slope, orientation and crossing lemmas, |sigma| <= 7, {checked} configurations"))
}

fn c7() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 3..=60 {
        let m = n - 3;
        ensure(8 * (universal_pointset_len(n) as i64 - 3) == eight_times_size(m), || format!("|U_{n}|"))?;
    }
    let mut edges = 0;
    for t in 0..500 {
        let n = rng.gen_range(5..=40);
        let g = random_maximal_plane_graph(n, &mut rng);
        let d = draw(&g).map_err(|e| format!("graph {t}: {e}"))?;
        let u = universal_pointset(n).map_err(|e| e.to_string())?;
        ensure(d.crossing_free && d.certificate.iter().all(|c| !c.crossing), || format!("graph {t} crosses"))?;
        ensure(d.points.iter().all(|p| u.contains(p)), || format!("graph {t} leaves U_{n}"))?;
        edges += g.edge_count();
    }
    Ok(format!("500 graphs, {edges} edges, no crossings"))
}

fn c8() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for t in 0..1000 {
        let n = rng.gen_range(3..=30);
        let g = random_maximal_plane_graph(n, &mut rng);
        let o = &g.outer_face;
        let co = canonical_order(&g, [o[0], o[1], o[2]]).map_err(|e| e.to_string())?;
        let co = recanonize(&g, &co).map_err(|e| e.to_string())?;
        let p = cperm(&co);
        let v = p.values();
        ensure(p.avoids(&[perm("213")]), || format!("graph {t}: {p} contains 213"))?;
        ensure(v[0] == 1 && v[1] == n && v[n - 1] == 2, || format!("graph {t}: {p}"))?;
    }
    let mut graphs = 0;
    for n in 3..=8 {
        for g in all_maximal_plane_graphs(n) {
            let o = &g.outer_face;
            let co = canonical_order(&g, [o[0], o[1], o[2]]).map_err(|e| e.to_string())?;
            let co = recanonize(&g, &co).map_err(|e| e.to_string())?;
            let hist = outer_path_history(&g, &co.order).map_err(|e| e.to_string())?;
            for path in &hist {
                ensure(path.windows(2).all(|w| co.pre[w[0]] < co.pre[w[1]]), || format!("n = {n}: {path:?}"))?;
            }
            graphs += 1;
        }
    }
    Ok(format!("1000 random graphs; boundary order on {graphs} graphs with n <= 8"))
}

fn c9() -> Result<String, String> {
    for h in 0..=10 {
        let s = strahler_of_tree(&RootedTree::complete_binary(h));
        ensure(s == h + 1, || format!("height {h}: {s}"))?;
    }
    for n in 3..=12 {
        let a = strahler_superpattern(n, 2).map_err(|e| e.to_string())?;
        let b = superpattern_213_3412(n).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("P({n},2) = {a}, 3n-4 = {b}"))?;
    }
    let mut checked = 0;
    for n in 1..=6 {
        let sp = strahler_superpattern(n, 3).map_err(|e| e.to_string())?;
        let oracle: Vec<Permutation> = enumerate_class(n, &[perm("213")])
            .into_iter()
            .filter(|p| is_tree_augmented(p) && strahler_upper_bound(p).is_ok_and(|s| s <= 3))
            .collect();
        ensure(oracle == tree_augmented_with_bound(n, 3), || format!("n = {n}: enumerations differ"))?;
        for p in oracle {
            ensure(oracle_contains(&sp, &p), || format!("{p} not in P({n},3)"))?;
            let pos = embed_into_strahler_superpattern(&p, n, 3).map_err(|e| e.to_string())?;
            ensure(is_embedding(&sp, &p, &pos), || format!("{p} witness"))?;
            checked += 1;
        }
    }
    let mut through = 0;
    for n in 1..=6 {
        for p in enumerate_class(n, &[perm("213")]) {
            let a = tree_augment(&p).map_err(|e| e.to_string())?;
            if a.strahler() > 3 {
                continue;
            }
            let m = a.perm.len();
            let sp = strahler_superpattern(m, 3).map_err(|e| e.to_string())?;
            ensure(oracle_contains(&sp, &a.perm), || format!("augmentation of {p} not in P({m},3)"))?;
            ensure(oracle_contains(&sp, &p), || format!("{p} not in P({m},3)"))?;
            through += 1;
        }
    }
    let mut growth = Vec::new();
    for s in 3..=4u32 {
        let fails = (8..=256usize)
            .filter(|&n| {
                let small = superpat_core::superpattern::strahler_superpattern_len(n, s).unwrap() as f64;
                let big = superpat_core::superpattern::strahler_superpattern_len(2 * n, s).unwrap() as f64;
                big > 2.0 * small * (1.0 + (2.0 * n as f64).log2()) / (n as f64).log2()
            })
            .count();
        growth.push(format!("doubling bound s={s}: {fails}/249 over"));
    }
    Ok(format!("{checked} tree-augmented members and {through} augmented avoiders in P(n,3); {}", growth.join(", ")))
}

fn c10() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for t in 0..200 {
        let n = rng.gen_range(3..=40);
        let g: PlaneGraph = random_connected_plane_graph(n, &mut rng);
        let (full, co) = triangulate(&g).map_err(|e| format!("graph {t}: {e}"))?;
        ensure(full.is_maximal(), || format!("graph {t} not maximal"))?;
        let v1 = co.order[0];
        for v in 0..n {
            if let Some(p) = co.parent[v] {
                ensure(p == v1 || g.has_edge(p, v), || format!("graph {t}: tree edge {p}-{v} not in the input"))?;
            }
        }
    }
    Ok("200 graphs".into())
}

fn main() {
    let checks: [(usize, &str, Check); 10] = [
        (1, "superpattern sizes", c1),
        (2, "mu_n covers S_n(213), n <= 8", c2),
        (3, "minimal lengths n <= 5", c3),
        (4, "class constructions", c4),
        (5, "zeta bounds", c5),
        (6, "geometry lemmas", c6),
        (7, "end-to-end drawings", c7),
        (8, "cperm structure", c8),
        (9, "Strahler pipeline", c9),
        (10, "triangulation tree edges", c10),
    ];
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (id, name, f) in checks {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {id:>2} PASS  {name} [{secs:.1}s] {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name} [{secs:.1}s] {detail}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

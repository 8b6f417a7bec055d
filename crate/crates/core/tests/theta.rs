use d4mod_core::cubes::{act, normalize, Cube, TripleSl2};
use d4mod_core::lattice::{enumerate_shell, ShellStore};
use d4mod_core::theta::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Straight triple count of `N = (-e, -f, -g)`, `Tr(alpha beta gamma) = m`.
fn triple_count_oracle(e: i64, f: i64, g: i64, m: i64) -> u64 {
    let shell = |n: i64| enumerate_shell(n as u64).unwrap().elements().to_vec();
    let (xs, ys, zs) = (shell(-e), shell(-f), shell(-g));
    let mut count = 0;
    for x in &xs {
        for y in &ys {
            let p = x.checked_mul(y).unwrap().conj();
            // Tr((x y) z) = <conj(x y), z>
            count += zs.iter().filter(|z| p.bilinear(z) == m).count() as u64;
        }
    }
    count
}

#[test]
fn unit_cube_coefficient_matches_the_triple_loop() {
    let store = ShellStore::default();
    let fast = cube_coefficient(&Cube::normal(-1, -1, -1, 1), &store, 1).unwrap();
    assert_eq!(fast as u64, triple_count_oracle(-1, -1, -1, 1));
    assert_eq!(fast, 3_225_600);
}

#[test]
fn small_coefficients_match_the_triple_loop() {
    let store = ShellStore::default();
    for (e, f, g, m) in [(-1, -1, -1, 0), (-1, -1, -2, 1), (-1, -2, -1, 0), (-2, -1, -1, 2), (0, -1, -1, 1)] {
        let c = Cube::normal(e, f, g, m);
        assert_eq!(cube_coefficient(&c, &store, 1).unwrap() as u64, triple_count_oracle(e, f, g, m), "{c}");
    }
}

#[test]
fn positive_discriminant_coefficients_vanish() {
    let store = ShellStore::default();
    let family = [(-1, -1, -1, 3), (-1, -1, -1, -4), (-1, -2, -1, 3), (-2, -2, -1, 5), (0, 0, 0, 1), (0, 0, 0, -2), (2, 1, 1, 1)];
    for (e, f, g, m) in family {
        let c = Cube::normal(e, f, g, m);
        assert!(c.discriminant() > 0);
        assert_eq!(cube_coefficient(&c, &store, 1).unwrap(), 0, "{c}");
    }
    assert!(cube_coefficient(&Cube::normal(0, 0, 0, 0), &store, 1).is_err());
    assert!(cube_coefficient(&Cube::new([1, 1, 0, 0, 0, 0, 0, 1]), &store, 1).is_err());
    assert!(matches!(
        cube_coefficient(&Cube::normal(-20, -1, -1, 1), &store, 1),
        Err(d4mod_core::Error::Resource(_))
    ));
}

fn random_sl2(rng: &mut impl Rng) -> [[i64; 2]; 2] {
    let (a, b) = loop {
        let (a, b) = (rng.gen_range(-6i64..=6), rng.gen_range(-6i64..=6));
        if num_integer::gcd(a, b) == 1 {
            break (a, b);
        }
    };
    let e = num_integer::Integer::extended_gcd(&a, &b);
    let (x, y) = if e.gcd == 1 { (e.x, e.y) } else { (-e.x, -e.y) };
    [[a, b], [-y, x]]
}

#[test]
fn coefficients_are_orbit_invariants() {
    let store = ShellStore::default();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for base in [Cube::normal(-1, -1, -1, 1), Cube::normal(-1, -1, -1, 0), Cube::normal(-1, -1, -2, 1)] {
        let k = cube_coefficient(&base, &store, 1).unwrap();
        for _ in 0..5 {
            let g = TripleSl2::new(random_sl2(&mut rng), random_sl2(&mut rng), random_sl2(&mut rng)).unwrap();
            let (n, _) = normalize(&act(&g, &base)).unwrap();
            assert_eq!(cube_coefficient(&n, &store, 1).unwrap(), k, "{base} -> {n}");
        }
    }
}

#[test]
fn enumerated_elements_are_rank_one() {
    let store = ShellStore::default();
    let elems = enumerate_rank1_psd([1, 1, 1], &store, 2).unwrap();
    assert_eq!(elems.len(), 57_600);
    for a in elems.iter().step_by(97) {
        assert!(a.sharp().unwrap().is_zero());
        assert!(a.is_psd_rank1().unwrap());
        assert_ne!(a.trace().unwrap(), 0);
        assert_eq!(kim_coeff(a).unwrap(), 240);
    }
    let elems = enumerate_rank1_psd([2, 0, 2], &store, 1).unwrap();
    assert_eq!(elems.len(), 17_520);
    for a in &elems {
        assert_eq!(a.rank().unwrap(), 1);
        assert_eq!((a.a, a.b, a.c), (2, 0, 2));
        assert!(a.alpha.is_zero() && a.gamma.is_zero());
    }
    let contents: Vec<u64> = elems.iter().map(|a| a.content().unwrap()).collect();
    assert_eq!(contents.iter().filter(|&&c| c == 2).count(), 240);
    assert!(elems.iter().all(|a| a.trace().unwrap() != 0));
}

#[test]
fn rho_is_symmetric() {
    let store = ShellStore::default();
    for d in [[1, 1, 2], [1, 2, 0], [3, 1, 0], [1, 1, 3]] {
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let values: Vec<u128> = perms.iter().map(|p| rho([d[p[0]], d[p[1]], d[p[2]]], &store, 1).unwrap().rho).collect();
        assert!(values.iter().all(|&v| v == values[0]), "{d:?}: {values:?}");
        assert_eq!(values[0], d.iter().map(|&n| e4_coeff(n) as u128).product::<u128>());
    }
}

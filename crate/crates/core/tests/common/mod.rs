//! Oracles and axiom checks shared by the diagram tests and the acceptance run.
#![allow(dead_code)]

use envelope_core::diagrams::{hom_basis, hom_count, Calculus, Caps, FlavorKind, Letter, MorLin, Word};
use envelope_core::{Field, Rationals};

type Q = Rationals;

// ---------------------------------------------------------------- counting oracles

pub fn double_factorial_odd(n: u128) -> u128 {
    // (2n−1)!!
    (1..=n).map(|k| 2 * k - 1).product()
}

pub fn factorial(n: u128) -> u128 {
    (1..=n).product()
}

pub fn catalan_binomial(n: u128) -> u128 {
    let mut c: u128 = 1;
    for k in 0..n {
        c = c * (2 * n - k) / (k + 1);
    }
    c / (n + 1)
}

pub fn bell_triangle(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    row[0]
}

pub fn charge(w: &Word) -> (usize, usize) {
    let pos = w.0.iter().filter(|&&l| l == Letter::Pos).count();
    (pos, w.len() - pos)
}

pub fn expected(kind: FlavorKind, a: &Word, b: &Word) -> u128 {
    let n = a.len() + b.len();
    match kind {
        FlavorKind::Brauer if n % 2 == 0 => double_factorial_odd(n as u128 / 2),
        FlavorKind::TemperleyLieb if n % 2 == 0 => catalan_binomial(n as u128 / 2),
        FlavorKind::Brauer | FlavorKind::TemperleyLieb => 0,
        FlavorKind::Partition => bell_triangle(n),
        FlavorKind::WalledBrauer => {
            // bijections between {a₊ ∪ b₋} and {a₋ ∪ b₊}
            let (ap, an) = charge(a);
            let (bp, bn) = charge(b);
            if ap + bn == an + bp {
                factorial((ap + bn) as u128)
            } else {
                0
            }
        }
    }
}

pub fn check_hom_counts() {
    let caps = Caps::default();
    for kind in [FlavorKind::Brauer, FlavorKind::TemperleyLieb, FlavorKind::Partition, FlavorKind::WalledBrauer] {
        let words = Word::all_up_to(kind, 8);
        for a in &words {
            for b in &words {
                if a.len() + b.len() > 8 {
                    continue;
                }
                let e = expected(kind, a, b);
                assert_eq!(hom_count(kind, a, b), e, "{kind} {a} → {b}");
                assert_eq!(hom_basis(kind, a, b, &caps).unwrap().len() as u128, e, "{kind} {a} → {b}");
            }
        }
    }
    let w = |s: &str| Word::parse(s).unwrap();
    assert_eq!(hom_count(FlavorKind::Brauer, &w("+++"), &w("+++")), 15);
    assert_eq!(hom_count(FlavorKind::TemperleyLieb, &w("++++"), &w("++++")), 14);
    assert_eq!(hom_count(FlavorKind::WalledBrauer, &w("++--"), &w("++--")), 24);
}

// ---------------------------------------------------------------- axioms on random instances

pub fn calculus(kind: FlavorKind) -> Calculus<Q> {
    let f = Rationals;
    let t = match kind {
        FlavorKind::TemperleyLieb => f.from_int(-2),
        _ => f.from_rational(&"7/2".parse().unwrap()).unwrap(),
    };
    Calculus::new(f, kind, t)
}

pub fn word_from(kind: FlavorKind, bits: &[bool]) -> Word {
    Word(
        bits.iter()
            .map(|&b| if kind == FlavorKind::WalledBrauer && b { Letter::Neg } else { Letter::Pos })
            .collect(),
    )
}

/// A word with a nonempty hom space from `a`: a shuffle of `a`, possibly
/// with a dual pair inserted.
pub fn partner_word(kind: FlavorKind, a: &Word, seed: u64) -> Word {
    let mut v = a.0.clone();
    let mut s = seed;
    for i in (1..v.len()).rev() {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        v.swap(i, (s >> 33) as usize % (i + 1));
    }
    let max = if kind == FlavorKind::Partition { 3 } else { 4 };
    if seed % 3 == 0 && v.len() + 2 <= max {
        let at = (seed as usize / 3) % (v.len() + 1);
        v.insert(at, Letter::Pos);
        v.insert(at + 1, if kind == FlavorKind::WalledBrauer { Letter::Neg } else { Letter::Pos });
    }
    if kind == FlavorKind::Partition && seed % 5 == 1 && v.len() < max {
        v.push(Letter::Pos);
    }
    Word(v)
}

pub fn random_mor(calc: &Calculus<Q>, a: &Word, b: &Word, picks: &[(usize, i64)]) -> MorLin<Q> {
    let basis = hom_basis(calc.kind, a, b, &Caps::default()).unwrap();
    let f = Rationals;
    let mut m = MorLin::zero(a.clone(), b.clone());
    for &(k, c) in picks {
        if basis.is_empty() {
            break;
        }
        let d = calc.from_pairing(a, b, basis[k % basis.len()].clone());
        calc.add_assign(&mut m, &d, &f.from_int(c));
    }
    m
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub words: [Vec<bool>; 2],
    pub seeds: [u64; 4],
    pub picks: [Vec<(usize, i64)>; 4],
}

pub fn check_axioms(kind: FlavorKind, inst: &Instance) {
    let calc = calculus(kind);
    let a = word_from(kind, &inst.words[0]);
    let b = partner_word(kind, &a, inst.seeds[0]);
    let c = partner_word(kind, &b, inst.seeds[1]);
    let d = word_from(kind, &inst.words[1]);
    let e = partner_word(kind, &d, inst.seeds[2]);
    let h = partner_word(kind, &e, inst.seeds[3]);

    // snakes
    let xd = kind.dual_word(&a);
    let id_a = calc.identity(&a);
    let id_xd = calc.identity(&xd);
    let s1 = calc
        .compose(&calc.tensor(&id_a, &calc.ev(&a)), &calc.tensor(&calc.co(&a), &id_a))
        .unwrap();
    assert_eq!(s1, id_a);
    let s2 = calc
        .compose(&calc.tensor(&calc.ev(&a), &id_xd), &calc.tensor(&id_xd, &calc.co(&a)))
        .unwrap();
    assert_eq!(s2, id_xd);

    // σ² = id
    let sab = calc.braiding(&a, &d);
    let sba = calc.braiding(&d, &a);
    assert_eq!(calc.compose(&sba, &sab).unwrap(), calc.identity(&a.concat(&d)));

    let f1 = random_mor(&calc, &a, &b, &inst.picks[0]);
    let f2 = random_mor(&calc, &b, &c, &inst.picks[1]);
    let g1 = random_mor(&calc, &d, &e, &inst.picks[2]);
    let g2 = random_mor(&calc, &e, &h, &inst.picks[3]);

    // interchange
    let lhs = calc.compose(&calc.tensor(&f2, &g2), &calc.tensor(&f1, &g1)).unwrap();
    let rhs = calc.tensor(&calc.compose(&f2, &f1).unwrap(), &calc.compose(&g2, &g1).unwrap());
    assert_eq!(lhs, rhs);

    // naturality of σ
    let l = calc.compose(&calc.braiding(&b, &e), &calc.tensor(&f1, &g1)).unwrap();
    let r = calc.compose(&calc.tensor(&g1, &f1), &calc.braiding(&a, &d)).unwrap();
    assert_eq!(l, r);

    // associativity
    let k = random_mor(&calc, &c, &a, &inst.picks[2]);
    let l = calc.compose(&k, &calc.compose(&f2, &f1).unwrap()).unwrap();
    let r = calc.compose(&calc.compose(&k, &f2).unwrap(), &f1).unwrap();
    assert_eq!(l, r);
}


/// A reproducible instance drawn from a seeded generator.
pub fn seeded_instance(rng: &mut impl rand::Rng) -> Instance {
    let word = |rng: &mut dyn rand::RngCore| {
        let n = rng.next_u32() % 3;
        (0..n).map(|_| rng.next_u32() % 2 == 1).collect::<Vec<bool>>()
    };
    let w0 = word(rng);
    let w1 = word(rng);
    let seeds = [rng.gen(), rng.gen(), rng.gen(), rng.gen()];
    let mut picks = || -> Vec<(usize, i64)> {
        let n = rng.gen_range(1..=3);
        (0..n).map(|_| (rng.gen_range(0..1000), rng.gen_range(-3..=3))).collect()
    };
    let picks = [picks(), picks(), picks(), picks()];
    Instance { words: [w0, w1], seeds, picks }
}

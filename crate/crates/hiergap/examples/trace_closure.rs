//! Closure of the hyperbolic trace set under transfer-matrix products.
//!
//! Each site of a periodic difference equation contributes a matrix
//! T(t) = [[0, -1], [1, t]] with det T = 1. Whenever every site
//! coefficient satisfies |t| > 2, the unit-cell product stays in the set
//! M = { M in SL(2,R) : |tr M| > 2 }, so the frequency in question lies
//! in a band gap no matter how the sites are ordered or how many there
//! are. This example walks the algebra behind that statement:
//!
//! 1. random products of gap-side matrices never leave M,
//! 2. the entry bounds that drive the induction hold at every partial
//!    product,
//! 3. general SL(2,R) has no such closure (an explicit counterexample),
//! 4. the marginal case |t| = 2 gives polynomially growing powers with
//!    |trace| pinned to exactly 2.

use hiergap::sl2::{
    self, lemma_entry_check, non_closure_counterexample, power_t2, power_tm2, t_matrix,
    theorem_margin,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> hiergap::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    println!("== products of gap-side matrices stay hyperbolic ==");
    let trials = 2_000;
    let mut min_margin = f64::INFINITY;
    let mut worst: Vec<f64> = Vec::new();
    for _ in 0..trials {
        let n = rng.gen_range(1..=40);
        let ts: Vec<f64> = (0..n)
            .map(|_| {
                let mag = rng.gen_range(2.0001..50.0_f64);
                if rng.gen_bool(0.5) { mag } else { -mag }
            })
            .collect();
        let verdict = theorem_margin(&ts)?;
        assert!(verdict.in_m, "closure failed for ts = {ts:?}");
        assert!(lemma_entry_check(&ts)?, "entry bounds failed for ts = {ts:?}");
        if verdict.margin < min_margin {
            min_margin = verdict.margin;
            worst = ts;
        }
    }
    println!("{trials} random products, all with |trace| > 2");
    println!("smallest margin |trace| - 2 = {min_margin:.6e} at n = {}", worst.len());

    // the margin is worst when every |t| hugs 2; a chain of n identical
    // sites at t = 2 + eps still clears the bound
    let eps = 1e-6;
    let tight = theorem_margin(&vec![2.0 + eps; 30])?;
    println!("30 sites at t = 2 + 1e-6: trace = {:.12}, margin = {:.3e}", tight.trace, tight.margin);
    assert!(tight.in_m);

    println!();
    println!("== the closure is a property of the T(t) form, not of SL(2,R) ==");
    let (a, b, verdict) = non_closure_counterexample();
    println!("A = diag(3, 1/3)           tr A = {}", a.trace());
    println!("B = T(3)                   tr B = {}", b.trace());
    let ab = a * b;
    println!("A B = [[{}, {}], [{}, {}]]", ab.a11, ab.a12, ab.a21, ab.a22);
    println!("tr(A B) = {} although |tr A| > 2 and |tr B| > 2", verdict.trace);
    assert!(!verdict.in_m);
    assert_eq!(verdict.trace, 1.0);

    println!();
    println!("== boundary case |t| = 2: powers grow linearly, trace stays at 2 ==");
    // T(2)^n = [[1-s, -1-s], [1+s, 2+s]] with s = n - 1; the trace never
    // crosses out of [-2, 2], which is why |t| > 2 must be strict
    for n in [1u32, 2, 5, 17, 64] {
        let p = power_t2(n)?;
        let q = iterate(2.0, n)?;
        assert_eq!((p.a11, p.a12, p.a21, p.a22), (q.a11, q.a12, q.a21, q.a22));
        let m = power_tm2(n)?;
        println!(
            "n = {n:>2}: tr T(2)^n = {}, tr T(-2)^n = {}, entries up to {}",
            p.trace(),
            m.trace(),
            p.a22.abs().max(p.a21.abs())
        );
        assert_eq!(p.trace(), 2.0);
        assert_eq!(m.trace().abs(), 2.0);
    }

    println!();
    println!("ok: the gap-side set is closed under products; the boundary is not inside it");
    Ok(())
}

// reference product by repeated multiplication, no closed form
fn iterate(t: f64, n: u32) -> hiergap::Result<sl2::TransferMatrix> {
    let step = t_matrix(t)?;
    let mut acc = sl2::TransferMatrix::IDENTITY;
    for _ in 0..n {
        acc = step * acc;
    }
    Ok(acc)
}

//! The linear recurrence T_n, greedy T-representations and the Rényi
//! expansion of 1.
//!
//!     cargo run --example numeration -- 4 -2 48

use num_bigint::BigUint;
use rauzy::cubic::{isolate_roots, validate_params};
use rauzy::numeration::{akiyama_classify, count_admissible, decode, greedy_encode, renyi_expansion_of_one, TSequence};

fn main() -> rauzy::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let int = |i: usize, d: i64| args.get(i).map_or(d, |s| s.parse().expect("integer argument"));
    let (a, b, n) = (int(0, 4), int(1, -2), int(2, 48));
    let params = validate_params(a, b)?;
    let seq = TSequence::new(params);

    let terms: Vec<String> = (-4..=8).map(|k| seq.get(k).map(|t| t.to_string())).collect::<Result<_, _>>()?;
    println!("T_-4..T_8: {}", terms.join(", "));

    let d = greedy_encode(&BigUint::from(n as u64), &seq);
    println!("{n} = [{d}]  (decodes to {})", decode(d.digits(), &seq)?);

    let emb = isolate_roots(params, 128)?;
    let e: Vec<String> = renyi_expansion_of_one(12, &emb)?.iter().map(u32::to_string).collect();
    println!("d_beta(1) = {}…", e.join(""));

    for len in [4, 8, 12] {
        println!("admissible words of length {len}: {}", count_admissible(len, &params));
    }
    let c = akiyama_classify(a, b);
    println!("{} (finiteness {})", c.case, c.finiteness);
    Ok(())
}

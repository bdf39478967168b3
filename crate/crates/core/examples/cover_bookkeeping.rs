//! Branch divisors, the halved character classes, and which of them are
//! certified ample, for the configuration of a quadratic irrationality.

use galconf::cover::cover_report;
use galconf::pipeline::{build_configuration, PipelineConfig};

fn main() -> galconf::Result<()> {
    let c = build_configuration(&PipelineConfig::parse("x^2 - 2")?)?;
    let r = cover_report(&c, None)?;
    println!("L = {}, {} blown-up points, sum of valences {}", r.lines, r.points, r.valence_sum);
    print!("m:");
    for (g, m) in &r.m {
        print!(" {g}:{m}");
    }
    println!();
    println!("every raw character sum even: {}", r.parity_all_even);
    for ch in &r.characters {
        println!(
            "  chi {}: M = {}H - ({} in E)  {:?}{}",
            ch.chi,
            ch.m_h,
            ch.m_b_sum,
            ch.ampleness,
            if ch.open_question.is_some() { "  [open]" } else { "" }
        );
    }
    println!("nonzero group elements pairwise independent: {}", r.hypotheses.independence_tautology);
    for a in &r.hypotheses.genericity_assumptions {
        println!("  assumed: {a}");
    }
    Ok(())
}

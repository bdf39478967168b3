use std::time::Instant;

use galconf::decode::decode;
use galconf::pipeline::{build, PipelineConfig};

fn main() -> galconf::Result<()> {
    let polys: Vec<String> = std::env::args().skip(1).collect();
    let polys = if polys.is_empty() {
        vec!["x^2 - 2".to_string(), "x^2 - x - 1".into(), "x^3 - 2".into(), "x^4 - x - 1".into()]
    } else {
        polys
    };
    for poly in polys {
        let t = Instant::now();
        let b = build(&PipelineConfig::parse(&poly)?)?;
        let c = &b.configuration;
        let w = decode(c)?;
        let ladder: Vec<usize> = c.valences().entries.iter().take(5).map(|e| e.1).collect();
        println!(
            "{poly:<12} L = {:>3}, {:>5} points, ladder {ladder:?}, decoded {w} ({}) in {:.0?}",
            c.line_count(),
            c.points().len(),
            if w == b.field.gen() { "generator" } else { "WRONG" },
            t.elapsed()
        );
    }
    Ok(())
}

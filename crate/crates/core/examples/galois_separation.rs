use galconf::decode::separation_certificate;
use galconf::pipeline::PipelineConfig;

fn main() -> galconf::Result<()> {
    let poly = std::env::args().nth(1).unwrap_or_else(|| "x^3 - 2".into());
    let cert = separation_certificate(&PipelineConfig::parse(&poly)?.with_precision(1e-10))?;
    println!("{cert}");
    Ok(())
}

use galconf::pipeline::{build_configuration, PipelineConfig, DEFAULT_PRECISION};
use galconf::render::render;

fn main() -> galconf::Result<()> {
    let c = build_configuration(&PipelineConfig::parse("x^2 - 2")?)?;
    for i in 0..2 {
        let r = render(&c, i, DEFAULT_PRECISION)?;
        let path = std::env::temp_dir().join(format!("sqrt2_embedding{i}.svg"));
        std::fs::write(&path, &r.svg).expect("writable temp dir");
        println!("wrote {} ({} bytes)", path.display(), r.svg.len());
    }
    let c = build_configuration(&PipelineConfig::parse("x^2 + 1")?)?;
    let r = render(&c, 0, DEFAULT_PRECISION)?;
    for w in &r.warnings {
        println!("x^2 + 1: {w}");
    }
    Ok(())
}

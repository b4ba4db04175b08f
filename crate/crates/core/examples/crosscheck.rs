//! Decider against oracle on 200 seeded random instances.

use isreconf::fuzz::{crosscheck, CrosscheckConfig};

fn main() -> isreconf::Result<()> {
    let dir = std::env::temp_dir().join("isreconf-crosscheck");
    let config = CrosscheckConfig { count: 200, max_n: 11, out_dir: dir, ..Default::default() };
    let report = crosscheck(&config)?;
    print!("{}", report.render());
    assert!(report.passed());
    Ok(())
}

// Build the two cumulative point sets from decile tables.
//
// cargo run --example cdf_sets

use std::error::Error;

use decfit::cdf::{build_lower_limit_cdf, build_mean_cdf, validate_series, Measure, ValueKind};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let means = [142.5, 191.8, 238.4, 287.1, 336.9, 392.6, 451.3, 528.7, 634.2, 912.5];
    let mean = validate_series("2003/2004", &means, ValueKind::Mean, Measure::Disposable)?;
    let m = build_mean_cdf(&mean)?;
    println!("mean methodology ({} points)", m.len());
    for pt in m.points() {
        println!("  {:>8.1}  {:>5.0}%", pt.x, pt.p);
    }
    assert_eq!(m.points().last().map(|pt| pt.p), Some(0.0));

    let bounds = [0.0, 168.2, 221.5, 276.9, 334.0, 398.7, 469.3, 551.8, 657.1, 806.4];
    let lower = validate_series("2007", &bounds, ValueKind::LowerLimit, Measure::Gross)?;
    let l = build_lower_limit_cdf(&lower)?;
    println!("lower-limit methodology ({} points)", l.len());
    for pt in l.points() {
        println!("  {:>8.1}  {:>5.0}%", pt.x, pt.p);
    }
    assert_eq!(l.points().last().map(|pt| pt.p), Some(10.0));

    // Ties and a nonzero first bound are rejected.
    let mut tied = means;
    tied[3] = tied[2];
    match validate_series("bad", &tied, ValueKind::Mean, Measure::Disposable) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => return Err("tied deciles should not validate".into()),
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

//! Region map of the triple-power nonlinearity, written as an SVG through
//! the command-line front end.

use periodic_waves::triple_power::{classify_portrait, half_kink_omega, region_boundaries, scan_region_map};

fn main() -> periodic_waves::Result<()> {
    println!("gamma = 2: {:?}", region_boundaries(2.0)?);
    let start = 4.0 / 5f64.sqrt();
    println!("half-kink curve starts at gamma = {start:.6}, omega = {:.6}", half_kink_omega(start)?);
    for omega in [-0.05, 0.05, 0.12, 0.2] {
        println!("gamma = 2.2, omega = {omega}: {:?}", classify_portrait(2.2, omega, 1e-9)?);
    }

    let map = scan_region_map((0.5, 3.0), (-0.4, 0.5), (100, 100))?;
    let mut counts = [0usize; 4];
    for &l in map.labels.iter().flatten() {
        counts[l as usize] += 1;
    }
    println!("cells with 0/1/2/3 positive solutions: {counts:?}");

    let out = std::env::temp_dir().join("triple_power_regions.svg");
    let args: Vec<String> = ["pwave", "regions", "--gamma", "0.5:3:200", "--omega", "-0.4:0.5:200", "--svg"]
        .iter()
        .map(|s| s.to_string())
        .chain([out.display().to_string(), "--out".into(), std::env::temp_dir().join("regions.json").display().to_string()])
        .collect();
    let code = periodic_waves::cli::run(&args);
    println!("wrote {} (exit {code})", out.display());
    Ok(())
}

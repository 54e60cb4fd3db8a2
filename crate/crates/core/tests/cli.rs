use std::path::Path;
use std::process::Command;

use periodic_waves::cli::field_file::read_field;
use periodic_waves::field::functionals;
use periodic_waves::NonlinearitySpec;
use serde_json::Value;

fn pwave(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pwave"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn doc(text: &str) -> Value {
    serde_json::from_str(text).expect("result document is JSON")
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).display().to_string()
}

const T: &str = "6.283185307179586";

#[test]
fn threshold_document() {
    let (code, out, _) = pwave(&["threshold", "--nonlinearity", "power:3", "--b", "1", "--T", "6.2831853"]);
    assert_eq!(code, 0);
    let d = doc(&out);
    assert_eq!(d["schema"], "pwave.threshold/1");
    assert_eq!(d["config"]["period"], 6.2831853);
    assert!((d["result"]["m_star"].as_f64().unwrap() - 0.7071).abs() < 1e-4);
    assert!((d["result"]["m_tilde"].as_f64().unwrap() - 1.5708).abs() < 1e-4);
}

#[test]
fn defocusing_mass_document() {
    let (code, out, _) = pwave(&["minimize-mass", "--nonlinearity", "power:3", "--b", "-1", "--m", "1", "--T", "6.2831853"]);
    assert_eq!(code, 0);
    let r = &doc(&out)["result"];
    assert_eq!(r["converged"], true);
    assert!(r["constancy"].as_f64().unwrap() < 1e-6);
    assert!((r["values"]["energy"].as_f64().unwrap() - 0.15915).abs() < 1e-5);
}

#[test]
fn field_files_round_trip_through_other_commands() {
    let dir = tempfile::tempdir().unwrap();
    let field = path(dir.path(), "u.txt");
    let (code, out, _) = pwave(&[
        "minimize-mass", "--nonlinearity", "power:3", "--b", "1", "--m", "3.14", "--T", T, "--modes", "24",
        "--field-out", &field,
    ]);
    assert_eq!(code, 0);
    let r = doc(&out)["result"].clone();
    let a = r["multiplier_a"].as_f64().unwrap();

    let u = read_field(Path::new(&field)).unwrap();
    let v = functionals(&u, &NonlinearitySpec::single_power(3.0).unwrap(), 1.0, a);
    for key in ["energy", "mass", "momentum", "action", "nehari"] {
        let before = r["values"][key].as_f64().unwrap();
        let after = match key {
            "energy" => v.energy,
            "mass" => v.mass,
            "momentum" => v.momentum,
            "action" => v.action,
            _ => v.nehari,
        };
        assert!((before - after).abs() <= 1e-12 * (1.0 + before.abs()), "{key}: {before} vs {after}");
    }

    let a_text = a.to_string();
    let (code, out, _) = pwave(&[
        "spectrum", "--nonlinearity", "power:3", "--b", "1", "--field", &field, "--a", &a_text,
    ]);
    assert_eq!(code, 0);
    let s = doc(&out)["result"].clone();
    let e = s["profile"]["values"]["energy"].as_f64().unwrap();
    assert!((e - r["values"]["energy"].as_f64().unwrap()).abs() <= 1e-12);
    assert_eq!(s["morse_index"], 1);
    assert_eq!(s["kernel_dimension"], 1);
}

#[test]
fn rearrange_reads_and_writes_fields() {
    let dir = tempfile::tempdir().unwrap();
    let (input, output) = (path(dir.path(), "v.txt"), path(dir.path(), "w.txt"));
    std::fs::write(
        &input,
        format!("T={T}\nboundary=anti-periodic\nN=3\n1 0.5 0.5\n-1 0.1 0\n3 0 -0.2\n"),
    )
    .unwrap();
    let (code, out, _) = pwave(&["rearrange", "--field", &input, "--field-out", &output]);
    assert_eq!(code, 0);
    let r = doc(&out)["result"].clone();
    assert_eq!(r["real"], true);
    let m = &r["mass"];
    assert!((m["before"].as_f64().unwrap() - m["after"].as_f64().unwrap()).abs() < 1e-14);
    let w = read_field(Path::new(&output)).unwrap();
    assert!(w.is_real(0.0));
}

#[test]
fn identical_arguments_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let run = |tag: &str| {
        let (doc, csv, svg) = (
            path(dir.path(), &format!("{tag}.json")),
            path(dir.path(), &format!("{tag}.csv")),
            path(dir.path(), &format!("{tag}.svg")),
        );
        let (code, _, _) = pwave(&[
            "minimize-mass", "--nonlinearity", "power:3", "--b", "-1", "--m", "1", "--T", T,
            "--boundary", "anti-periodic", "--modes", "16", "--seed", "7", "--csv", &csv, "--svg", &svg,
            "--out", &doc,
        ]);
        assert_eq!(code, 0);
        (
            std::fs::read(&doc).unwrap(),
            std::fs::read(&csv).unwrap(),
            std::fs::read(&svg).unwrap(),
        )
    };
    let first = run("a");
    let second = run("b");
    assert_eq!(first.1, second.1);
    assert_eq!(first.2, second.2);
    // The documents differ only in the output paths recorded in the config.
    let strip = |bytes: &[u8], tag: &str| String::from_utf8(bytes.to_vec()).unwrap().replace(&format!("{tag}."), "X.");
    assert_eq!(strip(&first.0, "a"), strip(&second.0, "b"));
}

#[test]
fn validation_errors_exit_one() {
    let (code, _, err) = pwave(&["minimize-nehari", "--nonlinearity", "power:3", "--b", "-1", "--a", "-1", "--T", T]);
    assert_eq!(code, 1);
    assert!(err.contains("opposite signs"), "{err}");

    let (code, _, err) = pwave(&[
        "minimize-nehari", "--nonlinearity", "power:3", "--b", "1", "--a", "1.5", "--T", T, "--boundary", "anti-periodic",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("4 pi^2/T^2") || err.contains("4π²/T²"), "{err}");

    let (code, _, err) = pwave(&["minimize-mass", "--nonlinearity", "power:7", "--b", "1", "--m", "1", "--T", T]);
    assert_eq!(code, 1);
    assert!(err.contains("subcritical"), "{err}");

    let (code, _, _) = pwave(&["threshold", "--nonlinearity", "power:3", "--b", "1"]);
    assert_eq!(code, 1);
    let (code, _, _) = pwave(&["threshold", "--nonlinearity", "cubic", "--b", "1", "--T", "1"]);
    assert_eq!(code, 1);
    let (code, _, _) = pwave(&["frobnicate"]);
    assert_eq!(code, 1);
}

#[test]
fn non_convergence_exits_two() {
    let (code, out, _) = pwave(&[
        "minimize-mass", "--nonlinearity", "power:3", "--b", "1", "--m", "3", "--T", T, "--init", "random",
        "--max-iters", "2",
    ]);
    assert_eq!(code, 2);
    assert_eq!(doc(&out)["result"]["converged"], false);
}

#[test]
fn regions_svg_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let (svg, csv) = (path(dir.path(), "r.svg"), path(dir.path(), "r.csv"));
    let (code, out, _) = pwave(&[
        "regions", "--gamma", "0.5:3:200", "--omega", "-0.4:0.5:200", "--svg", &svg, "--csv", &csv,
    ]);
    assert_eq!(code, 0);
    let counts = &doc(&out)["result"]["label_counts"];
    for k in ["0", "1", "2", "3"] {
        assert!(counts[k].as_u64().unwrap() > 0);
    }
    let svg = std::fs::read_to_string(svg).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    for label in ["zero solutions", "one solution", "two solutions", "three solutions"] {
        assert!(svg.contains(label));
    }
    assert!(svg.matches("<polyline").count() >= 3);
    let csv = std::fs::read_to_string(csv).unwrap();
    assert!(csv.starts_with("gamma,omega,label\n"));
    assert_eq!(csv.lines().count(), 1 + 200 * 200);
}

#[test]
fn every_subcommand_writes_a_versioned_document() {
    let dir = tempfile::tempdir().unwrap();
    let field = path(dir.path(), "f.txt");
    std::fs::write(&field, format!("T={T}\nboundary=anti-periodic\nN=3\n1 1 0\n")).unwrap();
    let runs: Vec<(&str, Vec<&str>)> = vec![
        ("potential", vec!["potential", "--nonlinearity", "power:3", "--a", "1", "--b", "-1", "--J", "0.2"]),
        ("portrait", vec!["portrait", "--nonlinearity", "power:3", "--a", "-1", "--b", "1", "--resolution", "4"]),
        ("minimize-nehari", vec!["minimize-nehari", "--nonlinearity", "power:3", "--a", "1", "--b", "-1", "--T", T, "--modes", "8"]),
        ("spectrum", vec!["spectrum", "--nonlinearity", "power:3", "--b", "-1", "--m", "1", "--T", T]),
        ("rearrange", vec!["rearrange", "--field", &field]),
        ("audit", vec!["audit", "--nonlinearity", "triple:2", "--b", "1"]),
    ];
    for (name, args) in runs {
        let (code, out, err) = pwave(&args);
        assert_eq!(code, 0, "{name}: {err}");
        let d = doc(&out);
        assert_eq!(d["schema"], format!("pwave.{name}/1"));
        assert_eq!(d["command"], name);
        assert!(d["config"].is_object());
        assert!(!out.contains("time"), "{name} output mentions a timestamp");
    }
}

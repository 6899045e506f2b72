use std::path::{Path, PathBuf};
use std::process::Command;

fn include_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include")
}

#[test]
fn header_declares_the_whole_abi() {
    let text = std::fs::read_to_string(include_dir().join("planehit.h")).unwrap();
    assert!(text.starts_with("#ifndef PLANEHIT_H"));
    for name in [
        "ph_last_error_message",
        "ph_version",
        "ph_instance_new",
        "ph_instance_from_json",
        "ph_instance_add_point",
        "ph_instance_add_halfplane",
        "ph_instance_num_points",
        "ph_instance_num_halfplanes",
        "ph_instance_to_json",
        "ph_instance_free",
        "ph_solve",
        "ph_solution_status",
        "ph_solution_size",
        "ph_solution_indices",
        "ph_solution_to_json",
        "ph_solution_free",
        "ph_string_free",
    ] {
        assert!(
            text.contains(&format!(" {name}(")) || text.contains(&format!("*{name}(")),
            "{name} missing"
        );
    }
    assert!(text.contains("typedef struct PhInstance PhInstance;"));
    assert!(text.contains("PH_ERROR_CODE_PANIC = 8"));
}

/// Compiles a C program against the header and the static library. Skipped
/// when no C compiler is on the path or the archive has not been built.
#[test]
fn c_program_links_and_runs() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(Path::parent).unwrap();
    let archive = profile_dir.join("libplanehit_ffi.a");
    if !archive.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no cc or no {}", archive.display());
        return;
    }
    let out = Path::new(env!("CARGO_TARGET_TMPDIR")).join("planehit_smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(include_dir())
        .arg(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/smoke.c"))
        .arg(&archive)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let run = Command::new(&out).output().unwrap();
    assert_eq!(
        run.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    let stdout = String::from_utf8(run.stdout).unwrap();
    assert!(
        stdout.starts_with(r#"{"status":"optimal","size":2,"#),
        "{stdout}"
    );
}

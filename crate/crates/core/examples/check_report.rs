//! The whole check suite through the library's command-line entry point,
//! with the JSON report written to a temporary file.
//!
//!     cargo run --example check_report

fn main() {
    let path = std::env::temp_dir().join("qlab-report.json");
    let args = ["qlab", "--seed", "7", "--json", path.to_str().expect("utf-8 path"), "report"];
    let code = qlab::cli::run(args, &mut std::io::stdout(), &mut std::io::stderr());
    println!("exit code {code}, report at {}", path.display());
}

use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, report) = plnr_cli::run(std::env::args_os());
    match report.get("help").and_then(|h| h.as_str()) {
        Some(help) => print!("{help}"),
        None => println!("{}", serde_json::to_string_pretty(&report).expect("report serializes")),
    }
    ExitCode::from(code as u8)
}

use std::process::ExitCode;

use diracdot::io::{emit, exit_code, parse_config, run, PipelineResult, RunError};

fn summary(result: &PipelineResult) -> Option<String> {
    // Two-decimal display for the log line only.
    match result {
        PipelineResult::Capture(d) => {
            Some(d.iter().map(|c| format!("{:?} {:.2}", c.kind, c.v)).collect::<Vec<_>>().join(", "))
        }
        PipelineResult::Resonances(t) => Some(
            t.iter()
                .flat_map(|t| t.capture_events.iter())
                .map(|e| format!("{:?} at v = {:.2}", e.kind, e.refined_v))
                .chain(t.iter().filter_map(|t| t.lost.clone()).map(|m| format!("lost: {m}")))
                .collect::<Vec<_>>()
                .join(", "),
        ),
        _ => None,
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let outcome = parse_config(&args, None).map_err(RunError::from).and_then(|config| {
        let result = run(&config)?;
        emit(&result, config.output.format, config.output.path.as_deref())?;
        Ok(result)
    });
    match outcome {
        Ok(result) => {
            if let Some(line) = summary(&result).filter(|l| !l.is_empty()) {
                eprintln!("{line}");
            }
            ExitCode::from(result.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}

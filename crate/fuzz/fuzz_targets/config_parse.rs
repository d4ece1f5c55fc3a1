#![no_main]

use libfuzzer_sys::fuzz_target;

// The config parser must reject arbitrary input with an error, never a panic.
fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    let _ = dirac_ws_cli::config::parse_config_str(&text);
});

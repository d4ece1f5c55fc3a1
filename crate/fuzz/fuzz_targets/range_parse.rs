#![no_main]

use libfuzzer_sys::fuzz_target;

// `lo:hi` window strings come straight from the command line; parsing must
// never panic, whatever the bytes.
fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    let _ = dirac_ws_cli::config::parse_range(&text);
});

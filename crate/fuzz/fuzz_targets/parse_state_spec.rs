//! Arbitrary bytes as a state spec. Must not panic; accepted specs must
//! survive a serialize/parse round trip.

#![no_main]

use libfuzzer_sys::fuzz_target;
use nonclass_cli::spec::{parse_state_spec, to_json};

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    if let Ok(spec) = parse_state_spec(&text) {
        let back = parse_state_spec(&to_json(&spec)).expect("serialized spec parses");
        assert_eq!(back, spec);
    }
});

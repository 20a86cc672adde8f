#![no_main]

use libfuzzer_sys::fuzz_target;
use nonclass_cli::spec::{parse_sweep_spec, to_json};

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    if let Ok(spec) = parse_sweep_spec(&text) {
        let back = parse_sweep_spec(&to_json(&spec)).expect("serialized spec parses");
        assert_eq!(back, spec);
        for i in 0..spec.steps.min(64) {
            let _ = spec.row_spec(i).validate();
        }
    }
});

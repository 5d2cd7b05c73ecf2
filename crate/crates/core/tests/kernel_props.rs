mod common;

use common::kernel;

#[test]
fn kernel_properties() {
    let mut failed = Vec::new();
    for (name, outcome) in kernel::all_properties() {
        if let Err(e) = outcome {
            failed.push(format!("{name}: {e}"));
        }
    }
    assert!(failed.is_empty(), "{failed:#?}");
}

// SPDX-License-Identifier: Apache-2.0

use sumcorrupt_core::comment::comment_out;

use super::{finish, Reason, TransformOutcome};
use crate::corpus::CodeRecord;
use crate::lang::{find_insertion_points, parse_function, render};

/// Insert the donor's whole source, commented out, as the first thing in the
/// host's body.
pub fn inject_commented_code(record: &CodeRecord, donor: &CodeRecord) -> TransformOutcome {
    let parsed = parse_function(record.language, record.code());
    if !parsed.parse_ok() {
        return TransformOutcome::dropped(Reason::ParseFailure);
    }
    let Some(points) = find_insertion_points(&parsed) else {
        return TransformOutcome::dropped(Reason::NoInsertionPoint);
    };
    let site = &points.signature_point;
    let payload = comment_out(record.language, donor.code(), &site.indentation);
    let code = render(&parsed, &site.edits(&payload)).expect("a single insertion cannot overlap");
    match finish(record, code) {
        Ok(r) => TransformOutcome::transformed(r),
        Err(reason) => TransformOutcome::dropped(reason),
    }
}

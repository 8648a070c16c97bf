use super::{FiniteFrame, Frame, SymbolicKind};

pub const BUILTIN_FRAME_NAMES: &str =
    "empty, loop, tail, cycle<n>, path<n>, backpath<n>, id<n>, z-shift, n-forward, n-backward";

/// Resolves a builtin frame name such as `cycle4` or `z-shift`.
pub fn builtin_frame(name: &str) -> Result<Frame, String> {
    let sized = |prefix: &str| -> Option<Result<usize, String>> {
        name.strip_prefix(prefix).map(|rest| match rest.parse::<usize>() {
            Ok(n) if n <= 64 => Ok(n),
            _ => Err(format!("bad size in `{name}` (expected 0..=64)")),
        })
    };
    let finite = match name {
        "empty" => FiniteFrame::empty(),
        "loop" => FiniteFrame::singleton_loop(),
        "tail" => FiniteFrame::singleton_tail(),
        "z-shift" => return Ok(Frame::Symbolic(SymbolicKind::ZShift)),
        "n-forward" => return Ok(Frame::Symbolic(SymbolicKind::NForward)),
        "n-backward" => return Ok(Frame::Symbolic(SymbolicKind::NBackward)),
        _ => {
            if let Some(n) = sized("cycle") {
                let n = n?;
                if n == 0 {
                    return Err("cycle0 has no indices; use `empty`".into());
                }
                FiniteFrame::cycle(n)
            } else if let Some(n) = sized("backpath") {
                FiniteFrame::backward_path(n?)
            } else if let Some(n) = sized("path") {
                FiniteFrame::path(n?)
            } else if let Some(n) = sized("id") {
                FiniteFrame::identity(n?)
            } else {
                return Err(format!("unknown builtin frame `{name}`; known: {BUILTIN_FRAME_NAMES}"));
            }
        }
    };
    Ok(Frame::Finite(finite))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        assert_eq!(builtin_frame("cycle3").unwrap(), Frame::Finite(FiniteFrame::cycle(3)));
        assert_eq!(
            builtin_frame("backpath2").unwrap(),
            Frame::Finite(FiniteFrame::backward_path(2))
        );
        assert_eq!(
            builtin_frame("n-backward").unwrap(),
            Frame::Symbolic(SymbolicKind::NBackward)
        );
        assert!(builtin_frame("cycle0").is_err());
        assert!(builtin_frame("spiral").is_err());
        assert!(builtin_frame("path-1").is_err());
    }
}

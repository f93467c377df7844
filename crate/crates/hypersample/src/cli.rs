pub fn run_from_args(_args: impl Iterator<Item = std::ffi::OsString>) -> i32 { 0 }

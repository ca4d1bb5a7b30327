//! C ABI for `qsprep`.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free` function. Every fallible call returns a
//! [`QsprepStatus`]; on failure the message is kept per thread and read back
//! with [`qsprep_last_error`]. Panics never unwind into C: they are caught and
//! reported as `QSPREP_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qsprep::alias::{build_alias_table, realized_marginal_f64, AliasTable};
use qsprep::bench::{synthesize, Method};
use qsprep::cliffordt::{compile_with_stats, SynthesisConfig, ToffoliMode};
use qsprep::sim::{fidelity_state, simulate};
use qsprep::states::{BenchmarkSpec, Family};
use qsprep::{Circuit, Error, TargetState};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QsprepStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Validation = 3,
    Capacity = 4,
    Compile = 5,
    Parse = 6,
    Io = 7,
    Degenerate = 8,
    Panic = 9,
}

/// Target state with real amplitudes.
pub struct QsprepState(TargetState);

/// Logical or compiled circuit.
pub struct QsprepCircuit(Circuit);

/// Quantized alias table.
pub struct QsprepAliasTable(AliasTable);

/// Resource counts of a circuit.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QsprepCounts {
    pub qubits: u64,
    pub total_gates: u64,
    pub n_t: u64,
    pub n_tdg: u64,
    pub n_ccx: u64,
    /// T + Tdg + 4 per Toffoli-equivalent.
    pub t_proxy: u64,
    /// Literal T and Tdg gates.
    pub compiled_t: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> QsprepStatus {
    match e {
        Error::Parameter(_) => QsprepStatus::InvalidArgument,
        Error::Validation(_) | Error::Structural(_) => QsprepStatus::Validation,
        Error::Capacity { .. } => QsprepStatus::Capacity,
        Error::Compile(_) => QsprepStatus::Compile,
        Error::Parse { .. } => QsprepStatus::Parse,
        Error::Io(_) => QsprepStatus::Io,
        Error::Degenerate(_) => QsprepStatus::Degenerate,
    }
}

enum Fail {
    Null(&'static str),
    Arg(String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Runs `f`, recording any failure or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> QsprepStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QsprepStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer passed as `{what}`"));
            QsprepStatus::NullPointer
        }
        Ok(Err(Fail::Arg(msg))) => {
            set_error(msg);
            QsprepStatus::InvalidArgument
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal panic: {msg}"));
            QsprepStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn string<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Arg(format!("`{what}` is not valid UTF-8")))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &'static str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn qsprep_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the calling thread's last error message into `buf` (truncated and
/// nul-terminated) and returns the full message length, 0 if there is none.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn qsprep_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qsprep_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a state from `2^num_qubits` real amplitudes (little-endian indices);
/// the vector must be normalized within `1e-10`.
///
/// # Safety
/// `amps` must be valid for `len` doubles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qsprep_state_from_amplitudes(
    amps: *const f64,
    len: usize,
    out: *mut *mut QsprepState,
) -> QsprepStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let amps = slice(amps, len, "amps")?;
        *out = boxed(QsprepState(TargetState::from_dense(amps)?));
        Ok(())
    })
}

/// Generates a benchmark state; `family` uses the command-line names
/// (`w`, `dicke`, `magnus`, `thc_file:PATH`, ...).
///
/// # Safety
/// `family` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qsprep_state_generate(
    family: *const c_char,
    n: usize,
    k: usize,
    seed: u64,
    out: *mut *mut QsprepState,
) -> QsprepStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let family: Family = string(family, "family")?.parse()?;
        *out = boxed(QsprepState(BenchmarkSpec::new(family, n, k, seed)?.generate()?));
        Ok(())
    })
}

/// # Safety
/// `state` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn qsprep_state_num_qubits(state: *const QsprepState) -> usize {
    state.as_ref().map_or(0, |s| s.0.num_qubits())
}

/// # Safety
/// `state` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn qsprep_state_support(state: *const QsprepState) -> usize {
    state.as_ref().map_or(0, |s| s.0.support())
}

/// # Safety
/// `state` must be null or an unfreed handle from this library.
#[no_mangle]
pub unsafe extern "C" fn qsprep_state_free(state: *mut QsprepState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Logical circuit for `state` with `method` (`dense`, `sparse`, `qrom`,
/// `selectswap`); `bits` is the alias-table width for sampling methods.
///
/// # Safety
/// Pointers must be valid as documented for the other calls.
#[no_mangle]
pub unsafe extern "C" fn qsprep_synthesize(
    state: *const QsprepState,
    method: *const c_char,
    bits: u32,
    out: *mut *mut QsprepCircuit,
) -> QsprepStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let state = deref(state, "state")?;
        let method: Method = string(method, "method")?.parse()?;
        *out = boxed(QsprepCircuit(synthesize(&state.0, method, bits)?));
        Ok(())
    })
}

/// Lowers a circuit to Clifford+T at tolerance `2^-bits`. `mode` is `gidney`
/// or `textbook`; a nonzero `cost_model` leaves non-exact rotations as
/// placeholders instead of synthesizing them.
///
/// # Safety
/// Pointers must be valid as documented for the other calls.
#[no_mangle]
pub unsafe extern "C" fn qsprep_compile(
    circuit: *const QsprepCircuit,
    bits: u32,
    mode: *const c_char,
    cost_model: bool,
    out: *mut *mut QsprepCircuit,
) -> QsprepStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let circuit = deref(circuit, "circuit")?;
        let mode: ToffoliMode = string(mode, "mode")?.parse()?;
        let cfg = SynthesisConfig::new(bits)?.with_mode(mode).with_cost_model(cost_model);
        *out = boxed(QsprepCircuit(compile_with_stats(&circuit.0, &cfg)?.circuit));
        Ok(())
    })
}

/// # Safety
/// `text` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qsprep_circuit_from_text(text: *const c_char, out: *mut *mut QsprepCircuit) -> QsprepStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = boxed(QsprepCircuit(Circuit::from_text(string(text, "text")?)?));
        Ok(())
    })
}

/// Serializes a circuit; free the result with [`qsprep_string_free`].
///
/// # Safety
/// `circuit` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qsprep_circuit_to_text(circuit: *const QsprepCircuit, out: *mut *mut c_char) -> QsprepStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let text = deref(circuit, "circuit")?.0.to_text();
        *out = CString::new(text).map_err(|_| Fail::Arg("circuit text contains nul".into()))?.into_raw();
        Ok(())
    })
}

/// # Safety
/// `circuit` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qsprep_circuit_counts(circuit: *const QsprepCircuit, out: *mut QsprepCounts) -> QsprepStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let r = deref(circuit, "circuit")?.0.report();
        *out = QsprepCounts {
            qubits: r.qubits as u64,
            total_gates: r.total_gates as u64,
            n_t: r.n_t as u64,
            n_tdg: r.n_tdg as u64,
            n_ccx: r.n_ccx as u64,
            t_proxy: r.t_proxy as u64,
            compiled_t: r.compiled_t as u64,
        };
        Ok(())
    })
}

/// `|<state|C|0>|^2` by dense simulation, failing with `QSPREP_STATUS_CAPACITY`
/// above `budget_qubits`.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qsprep_state_fidelity(
    circuit: *const QsprepCircuit,
    state: *const QsprepState,
    budget_qubits: usize,
    out: *mut f64,
) -> QsprepStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let circuit = &deref(circuit, "circuit")?.0;
        let state = &deref(state, "state")?.0;
        if state.num_qubits() > circuit.num_qubits() {
            return Err(Fail::Arg("state is wider than the circuit".into()));
        }
        let sv = simulate(circuit, budget_qubits)?;
        *out = fidelity_state(sv.amplitudes(), &state.to_complex(circuit.num_qubits()))?;
        Ok(())
    })
}

/// # Safety
/// `circuit` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qsprep_circuit_num_qubits(circuit: *const QsprepCircuit) -> usize {
    circuit.as_ref().map_or(0, |c| c.0.num_qubits())
}

/// # Safety
/// `circuit` must be null or an unfreed handle.
#[no_mangle]
pub unsafe extern "C" fn qsprep_circuit_free(circuit: *mut QsprepCircuit) {
    if !circuit.is_null() {
        drop(Box::from_raw(circuit));
    }
}

/// Alias table for `len` probabilities quantized to `bits` bits.
///
/// # Safety
/// `probs` must be valid for `len` doubles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qsprep_alias_table_build(
    probs: *const f64,
    len: usize,
    bits: u32,
    out: *mut *mut QsprepAliasTable,
) -> QsprepStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let p = slice(probs, len, "probs")?;
        *out = boxed(QsprepAliasTable(build_alias_table(p, bits)?));
        Ok(())
    })
}

/// Padded table length (a power of two).
///
/// # Safety
/// `table` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qsprep_alias_table_len(table: *const QsprepAliasTable) -> usize {
    table.as_ref().map_or(0, |t| t.0.len())
}

/// Writes the realized address distribution into `out[0..len]`; `len` must
/// equal [`qsprep_alias_table_len`].
///
/// # Safety
/// `table` must be live and `out` valid for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn qsprep_alias_table_marginal(
    table: *const QsprepAliasTable,
    out: *mut f64,
    len: usize,
) -> QsprepStatus {
    guard(|| {
        let table = &deref(table, "table")?.0;
        if len != table.len() {
            return Err(Fail::Arg(format!("buffer holds {len} values, table has {}", table.len())));
        }
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        let m = realized_marginal_f64(table);
        std::slice::from_raw_parts_mut(out, len).copy_from_slice(&m);
        Ok(())
    })
}

/// # Safety
/// `table` must be null or an unfreed handle.
#[no_mangle]
pub unsafe extern "C" fn qsprep_alias_table_free(table: *mut QsprepAliasTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

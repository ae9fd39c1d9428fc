//! A small ordered parallel map over indexed work items.
//!
//! Thread count comes from `LIE_EIGENLAB_THREADS` (default: available
//! parallelism). Results are collected by index, so the output order —
//! and with it every downstream report — is independent of scheduling.

pub fn thread_cap() -> usize {
    match std::env::var("LIE_EIGENLAB_THREADS") {
        Ok(v) => v.parse::<usize>().ok().filter(|&t| t >= 1).unwrap_or(1),
        Err(_) => std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1),
    }
}

/// Apply `f` to `0..count` on up to `thread_cap()` workers and return
/// the results in index order.
pub fn par_map<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let threads = thread_cap().min(count.max(1));
    if threads <= 1 || count <= 1 {
        return (0..count).map(f).collect();
    }
    let mut slots: Vec<Option<T>> = (0..count).map(|_| None).collect();
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots_ref = std::sync::Mutex::new(&mut slots);
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if idx >= count {
                    break;
                }
                let value = f(idx);
                let mut guard = slots_ref.lock().expect("worker poisoned the slot mutex");
                guard[idx] = Some(value);
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.expect("worker filled every slot"))
        .collect()
}

#pragma once

namespace pdlc {

/// Worker count to hand to an OpenMP region: `requested` when positive,
/// otherwise the runtime default.
int resolveThreads(int requested);

}  // namespace pdlc

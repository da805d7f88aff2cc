#ifndef COFLOWSIM_TRACE_IO_HPP
#define COFLOWSIM_TRACE_IO_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "coflowsim/coflow.hpp"
#include "coflowsim/fabric.hpp"

namespace coflowsim {

/// Canonical trace format: one JSON object per line,
///   {"id": .., "release_time": .., "deadline": .., "flows":
///    [{"src_machine": .., "dst_machine": .., "volume": ..}, ..]}
/// "deadline" is omitted when unset (<= 0); flows speak machines, not ports.
void write_canonical_trace(std::ostream& out, std::span<const Coflow> coflows,
                           const Fabric& fabric);
void write_canonical_trace(const std::string& path, std::span<const Coflow> coflows,
                           const Fabric& fabric);

std::vector<Coflow> read_canonical_trace(std::istream& in, const Fabric& fabric);
std::vector<Coflow> read_canonical_trace(const std::string& path, const Fabric& fabric);

}  // namespace coflowsim

#endif

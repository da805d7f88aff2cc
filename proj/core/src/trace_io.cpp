#include "coflowsim/trace_io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "coflowsim/errors.hpp"

namespace coflowsim {

using nlohmann::json;

void write_canonical_trace(std::ostream& out, std::span<const Coflow> coflows,
                           const Fabric& fabric) {
  for (const Coflow& c : coflows) {
    json rec;
    rec["id"] = c.id;
    rec["release_time"] = c.release_time;
    if (c.deadline > 0.0) rec["deadline"] = c.deadline;
    json flows = json::array();
    for (const Flow& f : c.flows) {
      flows.push_back({{"src_machine", fabric.machine_of(f.ingress_port)},
                       {"dst_machine", fabric.machine_of(f.egress_port)},
                       {"volume", f.volume}});
    }
    rec["flows"] = std::move(flows);
    out << rec.dump() << '\n';
  }
}

void write_canonical_trace(const std::string& path, std::span<const Coflow> coflows,
                           const Fabric& fabric) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open " + path + " for writing");
  write_canonical_trace(out, coflows, fabric);
}

std::vector<Coflow> read_canonical_trace(std::istream& in, const Fabric& fabric) {
  std::vector<Coflow> out;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(std::string("invalid record: ") + e.what(), line_no);
    }
    try {
      Coflow c;
      c.id = rec.at("id").get<int>();
      c.release_time = rec.value("release_time", 0.0);
      c.deadline = rec.value("deadline", 0.0);
      int flow_id = 0;
      for (const json& jf : rec.at("flows")) {
        const int src = jf.at("src_machine").get<int>();
        const int dst = jf.at("dst_machine").get<int>();
        if (src < 0 || src >= fabric.num_machines() || dst < 0 || dst >= fabric.num_machines()) {
          throw ParseError("machine index outside the fabric", line_no);
        }
        c.flows.push_back(Flow{c.id, flow_id++, fabric.ingress_port(src), fabric.egress_port(dst),
                               jf.at("volume").get<double>()});
      }
      out.push_back(std::move(c));
    } catch (const json::exception& e) {
      throw ParseError(std::string("invalid record: ") + e.what(), line_no);
    }
  }
  return out;
}

std::vector<Coflow> read_canonical_trace(const std::string& path, const Fabric& fabric) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open trace file " + path);
  return read_canonical_trace(in, fabric);
}

}  // namespace coflowsim

#include "superconc/models/registry.hpp"

#include <map>
#include <sstream>

#include "superconc/errors.hpp"
#include "superconc/models/ce_fields.hpp"
#include "superconc/models/dgff.hpp"
#include "superconc/models/gue.hpp"
#include "superconc/models/nk.hpp"
#include "superconc/models/polymer.hpp"
#include "superconc/models/sk.hpp"

namespace superconc {

namespace {

struct ParsedSpec {
  std::string name;
  std::map<std::string, std::string> kv;
};

ParsedSpec parse_spec(const std::string& spec) {
  ParsedSpec out;
  const std::size_t colon = spec.find(':');
  out.name = spec.substr(0, colon);
  if (out.name.empty()) throw ParseError(0, "model", "empty model name in '" + spec + "'");
  if (colon == std::string::npos) return out;
  std::string rest = spec.substr(colon + 1);
  std::size_t pos = 0;
  while (pos < rest.size()) {
    std::size_t end = rest.find(',', pos);
    if (end == std::string::npos) end = rest.size();
    const std::string item = rest.substr(pos, end - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ParseError(0, "model", "expected key=value, got '" + item + "'");
    out.kv[item.substr(0, eq)] = item.substr(eq + 1);
    pos = end + 1;
  }
  return out;
}

int require_int(const ParsedSpec& ps, const std::string& key) {
  const auto it = ps.kv.find(key);
  if (it == ps.kv.end())
    throw ParseError(0, key, "model '" + ps.name + "' requires " + key + "=<int>");
  try {
    std::size_t used = 0;
    const int v = std::stoi(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ParseError(0, key, "not an integer: '" + it->second + "'");
  }
}

}  // namespace

std::unique_ptr<FieldSampler> make_sampler(const std::string& spec) {
  const ParsedSpec ps = parse_spec(spec);
  if (ps.name == "iid") return std::make_unique<IidSampler>(require_int(ps, "n"));
  if (ps.name == "polymer") return std::make_unique<PolymerSampler>(require_int(ps, "n"));
  if (ps.name == "nk") return std::make_unique<NkSampler>(require_int(ps, "N"), require_int(ps, "K"));
  if (ps.name == "gue") return std::make_unique<GueSampler>(require_int(ps, "n"));
  if (ps.name == "ce_a") return std::make_unique<CeASampler>(require_int(ps, "n"));
  if (ps.name == "ce_b") return std::make_unique<CeBSampler>(require_int(ps, "n"));
  if (ps.name == "sk") {
    const auto xi_it = ps.kv.find("xi");
    if (xi_it == ps.kv.end()) throw ParseError(0, "xi", "sk model requires xi=<mixture>");
    XiSpec xi;
    try {
      xi = XiSpec::parse(xi_it->second);
    } catch (const Error& e) {
      throw ParseError(0, "xi", e.what());
    }
    SkBackend backend = SkBackend::Kernel;
    if (const auto b = ps.kv.find("backend"); b != ps.kv.end()) {
      if (b->second == "kernel")
        backend = SkBackend::Kernel;
      else if (b->second == "disorder")
        backend = SkBackend::Disorder;
      else
        throw ParseError(0, "backend", "unknown backend '" + b->second + "'");
    }
    return std::make_unique<SkSampler>(std::move(xi), require_int(ps, "n"), backend);
  }
  if (ps.name == "dgff") {
    DgffBoundary boundary = DgffBoundary::Zero;
    if (const auto b = ps.kv.find("boundary"); b != ps.kv.end()) {
      if (b->second == "zero")
        boundary = DgffBoundary::Zero;
      else if (b->second == "torus")
        boundary = DgffBoundary::Torus;
      else
        throw ParseError(0, "boundary", "unknown boundary '" + b->second + "'");
    }
    return std::make_unique<DgffSampler>(require_int(ps, "n"), boundary);
  }
  throw ParseError(0, "model", "unknown model '" + ps.name + "'");
}

void validate_spec(const std::string& spec) {
  const ParsedSpec ps = parse_spec(spec);
  static const std::map<std::string, std::string> size_key = {
      {"iid", "n"},  {"polymer", "n"}, {"sk", "n"},   {"nk", "N"},
      {"dgff", "n"}, {"gue", "n"},     {"ce_a", "n"}, {"ce_b", "n"}};
  const auto it = size_key.find(ps.name);
  if (it == size_key.end()) throw ParseError(0, "model", "unknown model '" + ps.name + "'");
  require_int(ps, it->second);
  if (ps.name == "nk") require_int(ps, "K");
  if (ps.name == "sk" && !ps.kv.count("xi"))
    throw ParseError(0, "xi", "sk model requires xi=<mixture>");
}

std::string respec_size(const std::string& spec, int n) {
  const ParsedSpec ps = parse_spec(spec);
  const std::string size_key = ps.name == "nk" ? "N" : "n";
  std::ostringstream os;
  os << ps.name << ":" << size_key << "=" << n;
  for (const auto& [k, v] : ps.kv)
    if (k != size_key) os << "," << k << "=" << v;
  return os.str();
}

}  // namespace superconc

#include "fk/system.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fk {

namespace {

double get_param(const std::map<std::string, double>& params,
                 const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

double wrap_unit(double x) {
  double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

}  // namespace

double arc_distance(double x, double y) {
  double d = std::fabs(wrap_unit(x) - wrap_unit(y));
  return std::min(d, 1.0 - d);
}

SystemSpec SystemSpec::make(const std::string& name,
                            const std::map<std::string, double>& params) {
  SystemSpec s;
  s.name_ = name;
  if (name == "full-shift-2" || name == "full-shift-k") {
    s.kind_ = SystemKind::FullShift;
    s.alphabet_ = static_cast<int>(get_param(params, "k", 2));
    if (name == "full-shift-2") s.alphabet_ = 2;
    if (s.alphabet_ < 2) throw ConfigError("full shift requires k >= 2");
    s.truncation_ = static_cast<int>(get_param(params, "L", 64));
    if (s.truncation_ < 1) throw ConfigError("truncation L must be >= 1");
    s.error_bound_ = std::ldexp(1.0, -s.truncation_);
  } else if (name == "unit-cube-shift") {
    s.kind_ = SystemKind::UnitCubeShift;
    s.truncation_ = static_cast<int>(get_param(params, "L", 64));
    if (s.truncation_ < 1) throw ConfigError("truncation L must be >= 1");
    s.error_bound_ = std::ldexp(1.0, -s.truncation_);
  } else if (name == "rotation-alpha") {
    s.kind_ = SystemKind::Rotation;
    s.alpha_ = get_param(params, "alpha", 0.0);
    if (s.alpha_ < 0.0 || s.alpha_ >= 1.0)
      throw ConfigError("rotation angle alpha must lie in [0,1)");
    s.error_bound_ = 1e-15;
  } else if (name == "doubling-map") {
    s.kind_ = SystemKind::Doubling;
    // x -> 2x mod 1 loses one bit of precision per step; bound for <= 16
    // iterations from a double input.
    s.error_bound_ = std::ldexp(1.0, -36);
  } else {
    throw ConfigError("unknown system: " + name);
  }
  return s;
}

double SystemSpec::band() const { return std::max(error_bound_, 1e-12); }

int SystemSpec::max_orbit_length() const {
  switch (kind_) {
    case SystemKind::FullShift:
    case SystemKind::UnitCubeShift:
      return truncation_ - kPrecisionHorizon;
    case SystemKind::Rotation:
    case SystemKind::Doubling:
      return 1 << 20;
  }
  return 0;
}

StatePoint SystemSpec::apply_map(const StatePoint& x) const {
  switch (kind_) {
    case SystemKind::FullShift:
    case SystemKind::UnitCubeShift: {
      if (x.coords.size() < 2)
        throw TruncationError("orbit exhausted truncation budget");
      StatePoint y;
      y.coords.assign(x.coords.begin() + 1, x.coords.end());
      return y;
    }
    case SystemKind::Rotation:
      return StatePoint{{wrap_unit(x.coords.at(0) + alpha_)}};
    case SystemKind::Doubling:
      return StatePoint{{wrap_unit(2.0 * x.coords.at(0))}};
  }
  return x;
}

double SystemSpec::base_distance(const StatePoint& x,
                                 const StatePoint& y) const {
  switch (kind_) {
    case SystemKind::FullShift: {
      const std::size_t m = std::min(x.coords.size(), y.coords.size());
      double d = 0.0, w = 0.5;
      for (std::size_t i = 0; i < m; ++i, w *= 0.5)
        if (x.coords[i] != y.coords[i]) d += w;
      return d;
    }
    case SystemKind::UnitCubeShift: {
      const std::size_t m = std::min(x.coords.size(), y.coords.size());
      double d = 0.0, w = 0.5;
      for (std::size_t i = 0; i < m; ++i, w *= 0.5)
        d += w * std::fabs(x.coords[i] - y.coords[i]);
      return d;
    }
    case SystemKind::Rotation:
    case SystemKind::Doubling:
      return arc_distance(x.coords.at(0), y.coords.at(0));
  }
  return 0.0;
}

StatePoint SystemSpec::sample(Rng& rng) const {
  StatePoint p;
  switch (kind_) {
    case SystemKind::FullShift:
      p.coords.resize(truncation_);
      for (auto& c : p.coords)
        c = static_cast<double>(rng.next_below(alphabet_));
      break;
    case SystemKind::UnitCubeShift:
      p.coords.resize(truncation_);
      for (auto& c : p.coords) c = rng.next_double();
      break;
    case SystemKind::Rotation:
    case SystemKind::Doubling:
      p.coords = {rng.next_double()};
      break;
  }
  return p;
}

StatePoint SystemSpec::sample_bernoulli(Rng& rng, double p) const {
  if (kind_ != SystemKind::FullShift || alphabet_ != 2)
    throw ConfigError("bernoulli sampler requires full-shift-2");
  if (p < 0.0 || p > 1.0) throw ConfigError("bernoulli p must lie in [0,1]");
  StatePoint pt;
  pt.coords.resize(truncation_);
  for (auto& c : pt.coords) c = rng.next_bernoulli(p) ? 1.0 : 0.0;
  return pt;
}

SystemSpec make_system(const std::string& name,
                       const std::map<std::string, double>& params) {
  return SystemSpec::make(name, params);
}

OrbitSegment orbit(const SystemSpec& system, const StatePoint& x, int n) {
  if (n < 1) throw ConfigError("orbit length must be positive");
  if (n > system.max_orbit_length())
    throw TruncationError("orbit length " + std::to_string(n) +
                          " exceeds truncation budget of system " +
                          system.name());
  OrbitSegment seg;
  seg.origin = x;
  seg.length = n;
  seg.points.reserve(n);
  seg.points.push_back(x);
  for (int i = 1; i < n; ++i)
    seg.points.push_back(system.apply_map(seg.points.back()));
  return seg;
}

OrbitSegment orbit_prefix(const OrbitSegment& seg, int n) {
  if (n < 1 || n > seg.length)
    throw ConfigError("prefix length out of range");
  OrbitSegment p;
  p.origin = seg.origin;
  p.length = n;
  p.points.assign(seg.points.begin(), seg.points.begin() + n);
  return p;
}

std::vector<OrbitSegment> prefix_segments(const std::vector<OrbitSegment>& sample,
                                          int n) {
  std::vector<OrbitSegment> out;
  out.reserve(sample.size());
  for (const auto& seg : sample) out.push_back(orbit_prefix(seg, n));
  return out;
}

StatePoint parse_point(const SystemSpec& system, const std::string& text) {
  if (text.empty()) throw ConfigError("empty point literal");
  const bool is_shift = system.kind() == SystemKind::FullShift ||
                        system.kind() == SystemKind::UnitCubeShift;
  if (!is_shift) {
    StatePoint p;
    p.coords = {std::stod(text)};
    return p;
  }
  StatePoint p;
  // ';' is accepted as a coordinate separator so point literals can appear
  // inside comma-separated option lists
  if (text.find(',') != std::string::npos ||
      text.find(';') != std::string::npos) {
    std::string norm = text;
    std::replace(norm.begin(), norm.end(), ';', ',');
    std::stringstream ss(norm);
    std::string item;
    while (std::getline(ss, item, ',')) p.coords.push_back(std::stod(item));
    if (p.coords.empty()) throw ConfigError("empty point literal");
    // pad cyclically to the truncation length
    const std::size_t base = p.coords.size();
    while (p.coords.size() < static_cast<std::size_t>(system.truncation_length()))
      p.coords.push_back(p.coords[p.coords.size() % base]);
    return p;
  }
  // compact symbol string, repeated cyclically
  for (int i = 0; i < system.truncation_length(); ++i) {
    char c = text[i % text.size()];
    if (c < '0' || c > '9') throw ConfigError("bad symbol in point literal");
    int sym = c - '0';
    if (system.kind() == SystemKind::FullShift &&
        sym >= system.alphabet_size())
      throw ConfigError("symbol outside alphabet in point literal");
    p.coords.push_back(static_cast<double>(sym));
  }
  return p;
}

}  // namespace fk

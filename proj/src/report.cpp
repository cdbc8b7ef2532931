#include "melnikov/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "melnikov/errors.hpp"

namespace melnikov {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const RationalPolynomial& p) {
  Json out = Json::array();
  for (int k = 0; k <= p.degree(); ++k)
    if (p.coeff(k) != 0) out.push_back({k, to_string(p.coeff(k))});
  return out;
}

Json to_json(const MelnikovPolynomial& m) {
  std::string text;
  if (!m.P.is_zero()) text = to_string(m.P);
  if (!m.Q.is_zero()) text += (text.empty() ? "" : " + ") + ("pi*(" + to_string(m.Q) + ")");
  if (text.empty()) text = "0";
  return {{"P", to_json(m.P)}, {"Q", to_json(m.Q)}, {"text", text}};
}

Json to_json(const RationalInterval& iv) {
  return {{"lo", to_string(iv.lo())}, {"hi", to_string(iv.hi())}, {"approx", to_double(iv.mid())}};
}

Json to_json(const ZeroCertificate& c) {
  Json intervals = Json::array();
  for (const auto& iv : c.isolating_intervals) intervals.push_back(to_json(iv));
  Json suspects = Json::array();
  for (const auto& iv : c.suspects) suspects.push_back(to_json(iv));
  Json out = {{"status", c.certified() ? "Certified" : "Uncertified"},
              {"count", c.count},
              {"isolating_intervals", intervals},
              {"pi_bits_used", c.pi_bits_used},
              {"suspects", suspects}};
  if (!c.certified()) out["reason"] = c.reason;
  return out;
}

Json to_json(const EctReport& r) {
  Json prefixes = Json::array();
  for (const auto& p : r.prefixes) {
    Json roots = p.positive_roots ? Json(*p.positive_roots) : Json(nullptr);
    prefixes.push_back(
        {{"prefix_size", p.prefix_size}, {"wronskian_string", to_string(p.wronskian)}, {"positive_roots", roots}});
  }
  Json out = {{"is_ect", r.is_ect}, {"prefixes", prefixes}};
  out["failing_prefix"] = r.failing_prefix ? Json(*r.failing_prefix) : Json(nullptr);
  return out;
}

namespace {

constexpr std::pair<Channel, const char*> kChannelKeys[] = {
    {Channel::APlus, "a_plus"}, {Channel::AMinus, "a_minus"}, {Channel::BPlus, "b_plus"}, {Channel::BMinus, "b_minus"}};

}  // namespace

Json to_json(const PiecewisePerturbation& p) {
  Json out = {{"degree", p.degree()}};
  for (const auto& [channel, key] : kChannelKeys) {
    Json entries = Json::array();
    for (const auto& [ij, value] : p.coefficients(channel))
      if (value != 0) entries.push_back({ij.first, ij.second, to_string(value)});
    out[key] = entries;
  }
  return out;
}

PiecewisePerturbation perturbation_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("perturbation must be a JSON object");
  std::set<std::string> allowed = {"degree"};
  for (const auto& [channel, key] : kChannelKeys) allowed.insert(key);
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw ConfigError("unknown perturbation key '" + key + "'");
  if (!j.contains("degree") || !j["degree"].is_number_integer())
    throw ConfigError("perturbation needs an integer 'degree'");
  const int degree = j["degree"].get<int>();
  if (degree < 0) throw ConfigError("perturbation degree must be nonnegative");
  PiecewisePerturbation p(degree);
  for (const auto& [channel, key] : kChannelKeys) {
    if (!j.contains(key)) continue;
    const Json& entries = j[key];
    if (!entries.is_array()) throw ConfigError(std::string(key) + " must be an array of [i, j, value]");
    for (const auto& e : entries) {
      if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer())
        throw ConfigError(std::string(key) + " entries must be [i, j, value]");
      Rational value;
      if (e[2].is_string())
        value = parse_rational(e[2].get<std::string>());
      else if (e[2].is_number_integer())
        value = Rational(e[2].get<long long>());
      else
        throw ConfigError("coefficient values must be \"num/den\" strings or integers");
      try {
        p.set(channel, e[0].get<int>(), e[1].get<int>(), value);
      } catch (const DomainError& err) {
        throw ConfigError(err.what());
      }
    }
  }
  return p;
}

Json to_json(const SwitchingCurve& c) {
  return {{"kind", c.is_reciprocal() ? "reciprocal" : "monomial"}, {"m", c.m()}};
}

Json to_json(const CycleReport& r) {
  Json cycles = Json::array();
  for (const auto& c : r.cycles)
    cycles.push_back({{"u", c.u},
                      {"displacement", c.displacement},
                      {"slope", c.slope},
                      {"stability", c.stability < 0 ? "attracting" : "repelling"}});
  return {{"cycles", cycles},
          {"count", r.cycles.size()},
          {"degenerate", r.degenerate},
          {"grid_size", r.scan.size()},
          {"warnings", r.warnings}};
}

Json to_json(const SweepResult& r) {
  Json histogram = Json::object();
  for (const auto& [count, trials] : r.histogram) histogram[std::to_string(count)] = trials;
  Json out = {{"degree", r.degree},
              {"trials", r.trials},
              {"max_observed", r.max_observed},
              {"histogram", histogram},
              {"uncertified", r.uncertified},
              {"method", r.numeric_path ? "numeric-sign-changes" : "certified"},
              {"within_bound", r.within_bound}};
  out["bound"] = r.bound ? Json(*r.bound) : Json(nullptr);
  return out;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,x,y,branch,event\n";
  for (const auto& p : traj.points)
    os << format_double(p.t) << ',' << format_double(p.x) << ',' << format_double(p.y) << ',' << p.branch << ','
       << (p.event ? 1 : 0) << '\n';
}

void write_scan_csv(std::ostream& os, const std::vector<ReturnSample>& scan) {
  os << "u0,u1,d\n";
  for (const auto& s : scan)
    os << format_double(s.u0) << ',' << format_double(s.u1) << ',' << format_double(s.u1 - s.u0) << '\n';
}

std::string svg_line_plot(const std::vector<double>& xs, const std::vector<double>& ys, const std::string& title,
                          const std::string& x_label, const std::string& y_label) {
  constexpr double width = 640, height = 400, margin = 50;
  double x_min = 0, x_max = 1, y_min = -1, y_max = 1;
  if (!xs.empty()) {
    x_min = *std::min_element(xs.begin(), xs.end());
    x_max = *std::max_element(xs.begin(), xs.end());
    y_min = *std::min_element(ys.begin(), ys.end());
    y_max = *std::max_element(ys.begin(), ys.end());
  }
  if (x_max <= x_min) x_max = x_min + 1;
  if (y_max <= y_min) {
    y_min -= 1;
    y_max += 1;
  }
  const auto px = [&](double x) { return margin + (x - x_min) / (x_max - x_min) * (width - 2 * margin); };
  const auto py = [&](double y) { return height - margin - (y - y_min) / (y_max - y_min) * (height - 2 * margin); };

  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  os << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << width - 2 * margin << "\" height=\""
     << height - 2 * margin << "\" fill=\"none\" stroke=\"black\"/>\n";
  if (y_min < 0 && y_max > 0)
    os << "<line x1=\"" << margin << "\" y1=\"" << py(0) << "\" x2=\"" << width - margin << "\" y2=\"" << py(0)
       << "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
  os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? " " : "") << px(xs[i]) << ',' << py(ys[i]);
  os << "\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"" << margin / 2 << "\" text-anchor=\"middle\">" << title << "</text>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\">" << x_label << " ["
     << x_min << ", " << x_max << "]</text>\n";
  os << "<text x=\"15\" y=\"" << height / 2 << "\" transform=\"rotate(-90 15 " << height / 2
     << ")\" text-anchor=\"middle\">" << y_label << " [" << y_min << ", " << y_max << "]</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace melnikov

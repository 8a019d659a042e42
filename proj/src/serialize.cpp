#include "condense/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "condense/dirichlet.hpp"

namespace condense {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json to_json(const Point& x) {
  Json j;
  j["kind"] = to_string(x.kind());
  switch (x.kind()) {
    case SpaceKind::finite_ell_p: {
      Json entries = Json::array();
      for (const auto& [c, v] : x.sequence().entries())
        entries.push_back(Json{{"coordinate", to_string(c)}, {"value", v}});
      j["entries"] = std::move(entries);
      break;
    }
    case SpaceKind::periodic_continuous: {
      Json humps = Json::array();
      for (const Hump& h : x.humps().humps())
        humps.push_back(Json{{"center", h.center}, {"width", h.width}, {"amplitude", h.amplitude}, {"order", h.order}});
      j["humps"] = std::move(humps);
      break;
    }
    case SpaceKind::scalar: j["value"] = x.scalar(); break;
  }
  return j;
}

Point point_from_json(const Json& j) {
  switch (space_kind_from_string(j.at("kind").get<std::string>())) {
    case SpaceKind::finite_ell_p: {
      SequencePoint s;
      for (const Json& e : j.at("entries"))
        s.set(parse_index(e.at("coordinate").get<std::string>()), e.at("value").get<double>());
      return Point(std::move(s));
    }
    case SpaceKind::periodic_continuous: {
      std::vector<Hump> humps;
      for (const Json& h : j.at("humps"))
        humps.push_back(Hump{h.at("center").get<double>(), h.at("width").get<double>(),
                             h.at("amplitude").get<double>(), h.at("order").get<std::int64_t>()});
      return Point(HumpSum(std::move(humps)));
    }
    case SpaceKind::scalar: return Point(j.at("value").get<double>());
  }
  throw std::invalid_argument("unreachable point kind");
}

Json to_json(const WitnessTrace& trace) {
  Json j;
  j["trace_version"] = kTraceVersion;
  j["family"] = trace.family_id;
  j["params"] = Json{{"K", trace.params.K},
                     {"cap", trace.params.cap},
                     {"n_max", to_string(trace.params.n_max)},
                     {"seed", trace.params.seed}};
  Json config = Json::object();
  for (const auto& [k, v] : trace.config) config[k] = v;
  j["config"] = std::move(config);
  Json steps = Json::array();
  for (const TraceStep& s : trace.steps) {
    steps.push_back(Json{{"k", s.k},
                         {"m", s.m},
                         {"n", to_string(s.n)},
                         {"beta", s.beta},
                         {"gamma", s.gamma},
                         {"op_norm", s.op_norm},
                         {"image_norm", s.image_norm},
                         {"sigma", s.sigma},
                         {"increment", to_json(s.increment)}});
  }
  j["steps"] = std::move(steps);
  j["final_point"] = to_json(trace.final_point);
  return j;
}

WitnessTrace trace_from_json(const Json& j) {
  if (j.at("trace_version").get<int>() != kTraceVersion)
    throw std::invalid_argument("unsupported trace_version");
  WitnessTrace t;
  t.family_id = j.at("family").get<std::string>();
  const Json& p = j.at("params");
  t.params.K = p.at("K").get<int>();
  t.params.cap = p.at("cap").get<double>();
  t.params.n_max = parse_index(p.at("n_max").get<std::string>());
  t.params.seed = p.at("seed").get<std::uint64_t>();
  for (const auto& [k, v] : j.at("config").items()) t.config[k] = v.get<std::string>();
  for (const Json& s : j.at("steps")) {
    TraceStep step;
    step.k = s.at("k").get<std::int64_t>();
    step.m = s.at("m").get<int>();
    step.n = parse_index(s.at("n").get<std::string>());
    step.beta = s.at("beta").get<double>();
    step.gamma = s.at("gamma").get<double>();
    step.op_norm = s.at("op_norm").get<double>();
    step.image_norm = s.at("image_norm").get<double>();
    step.sigma = s.at("sigma").get<int>();
    step.increment = point_from_json(s.at("increment"));
    t.steps.push_back(std::move(step));
  }
  t.final_point = point_from_json(j.at("final_point"));
  return t;
}

Json to_json(const Certificate& cert) {
  Json j;
  j["certificate_version"] = kCertificateVersion;
  j["accepted"] = cert.accepted();
  j["complete"] = cert.complete;
  if (auto k = cert.first_failure())
    j["first_failure"] = *k;
  else
    j["first_failure"] = nullptr;
  Json steps = Json::array();
  for (const StepFlags& s : cert.steps) {
    steps.push_back(Json{{"k", s.k},
                         {"schedule", s.schedule},
                         {"selection", s.selection},
                         {"step_distance", s.step_distance},
                         {"image_threshold", s.image_threshold},
                         {"op_norm_threshold", s.op_norm_threshold},
                         {"tail", s.tail},
                         {"final_bound", s.final_bound},
                         {"final_value", s.final_value},
                         {"final_margin", s.final_margin},
                         {"accepted", s.accepted()}});
  }
  j["steps"] = std::move(steps);
  return j;
}

Certificate certificate_from_json(const Json& j) {
  if (j.at("certificate_version").get<int>() != kCertificateVersion)
    throw std::invalid_argument("unsupported certificate_version");
  Certificate c;
  c.complete = j.at("complete").get<bool>();
  for (const Json& s : j.at("steps")) {
    StepFlags f;
    f.k = s.at("k").get<std::int64_t>();
    f.schedule = s.at("schedule").get<bool>();
    f.selection = s.at("selection").get<bool>();
    f.step_distance = s.at("step_distance").get<bool>();
    f.image_threshold = s.at("image_threshold").get<bool>();
    f.op_norm_threshold = s.at("op_norm_threshold").get<bool>();
    f.tail = s.at("tail").get<bool>();
    f.final_bound = s.at("final_bound").get<bool>();
    f.final_value = s.at("final_value").get<double>();
    f.final_margin = s.at("final_margin").get<double>();
    c.steps.push_back(f);
  }
  return c;
}

namespace {

Json to_json(const ConditionReport& r) {
  Json violations = Json::array();
  for (const Violation& v : r.violations) {
    violations.push_back(Json{{"seed", v.seed},
                              {"sample", v.sample},
                              {"n", to_string(v.n)},
                              {"m", v.m},
                              {"lhs", v.lhs},
                              {"rhs", v.rhs},
                              {"x", condense::to_json(v.x)},
                              {"y", condense::to_json(v.y)}});
  }
  return Json{{"condition", r.condition},
              {"tested", r.tested},
              {"violation_count", r.violation_count},
              {"worst_margin", r.worst_margin},
              {"violations", std::move(violations)}};
}

}  // namespace

Json to_json(const HypothesisReport& report) {
  Json curves = Json::array();
  for (const TrendCurve& c : report.trends.curves) {
    Json points = Json::array();
    for (const TrendPoint& p : c.checkpoints)
      points.push_back(Json{{"n", to_string(p.n)}, {"f", p.f}, {"c", p.c}, {"op_norm", p.op_norm}});
    curves.push_back(Json{{"x_sample", c.x_sample},
                          {"m", c.m},
                          {"max_f", c.max_f},
                          {"f_bounded", c.f_bounded},
                          {"c_decays", c.c_decays},
                          {"op_norm_grows", c.op_norm_grows},
                          {"checkpoints", std::move(points)}});
  }
  Json trends{{"x_samples", report.trends.x_samples},
              {"n_max", to_string(report.trends.n_max)},
              {"blowup_floor", report.trends.blowup_floor},
              {"note", "finite-range surrogates: uniformity in m and limits in n are not certified by sampling"},
              {"violation_count", report.trends.violation_count},
              {"violations", report.trends.violations},
              {"curves", std::move(curves)}};
  return Json{{"family", report.family_id},
              {"seed", report.seed},
              {"violation_count", report.violation_count()},
              {"condition_i", to_json(report.condition_i)},
              {"condition_iii", to_json(report.condition_iii)},
              {"trends", std::move(trends)}};
}

std::vector<GrowthRow> growth_rows(const OperatorFamily& family, const WitnessTrace& trace,
                                   const Certificate& cert) {
  std::vector<GrowthRow> rows;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& s = trace.steps[i];
    GrowthRow r;
    r.k = s.k;
    r.m = s.m;
    r.n = s.n;
    r.beta = s.beta;
    r.gamma = s.gamma;
    r.op_norm = s.op_norm;
    r.image_at_xk = s.image_norm;
    r.image_at_xK = family.image_norm(s.n, s.m, trace.final_point);
    r.target = s.k;
    r.pass = i < cert.steps.size() && cert.steps[i].accepted();
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string growth_csv(const std::vector<GrowthRow>& rows) {
  std::ostringstream out;
  out << kGrowthHeader << '\n';
  for (const GrowthRow& r : rows) {
    out << r.k << ',' << r.m << ',' << to_string(r.n) << ',' << format_double(r.beta) << ','
        << format_double(r.gamma) << ',' << format_double(r.op_norm) << ','
        << format_double(r.image_at_xk) << ',' << format_double(r.image_at_xK) << ',' << r.target
        << ',' << (r.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

std::vector<GrowthRow> parse_growth_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kGrowthHeader)
    throw std::invalid_argument("growth table: missing or unexpected header");
  std::vector<GrowthRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) cells.push_back(cell);
    if (cells.size() != 10) throw std::invalid_argument("growth table: expected 10 columns");
    GrowthRow r;
    r.k = std::stoll(cells[0]);
    r.m = std::stoi(cells[1]);
    r.n = parse_index(cells[2]);
    r.beta = std::stod(cells[3]);
    r.gamma = std::stod(cells[4]);
    r.op_norm = std::stod(cells[5]);
    r.image_at_xk = std::stod(cells[6]);
    r.image_at_xK = std::stod(cells[7]);
    r.target = std::stoll(cells[8]);
    if (cells[9] != "true" && cells[9] != "false") throw std::invalid_argument("growth table: bad pass cell");
    r.pass = cells[9] == "true";
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string schedule_csv(const BetaSchedule& s) {
  std::ostringstream out;
  out << "k,m,beta_tilde,beta,gamma\n";
  for (int k = 1; k <= s.K; ++k) {
    const auto i = static_cast<std::size_t>(k - 1);
    out << k << ',' << s.m[i] << ',' << format_double(s.beta_tilde[i]) << ','
        << format_double(s.beta[i]) << ',' << format_double(s.gamma[i]) << '\n';
  }
  return out.str();
}

std::string lebesgue_csv(const std::vector<double>& table) {
  std::ostringstream out;
  out << "n,L_n,asymptotic\n";
  for (std::size_t n = 0; n < table.size(); ++n) {
    out << n << ',' << format_double(table[n]) << ',';
    if (n >= 1) out << format_double(4.0 / (kPi * kPi) * std::log(static_cast<double>(n)));
    out << '\n';
  }
  return out.str();
}

std::string hypothesis_summary_csv(const HypothesisReport& r) {
  std::ostringstream out;
  out << "condition,samples,violations,worst_margin\n";
  out << "i," << r.condition_i.tested << ',' << r.condition_i.violation_count << ','
      << format_double(r.condition_i.worst_margin) << '\n';
  out << "iii," << r.condition_iii.tested << ',' << r.condition_iii.violation_count << ','
      << format_double(r.condition_iii.worst_margin) << '\n';
  out << "trends," << r.trends.curves.size() << ',' << r.trends.violation_count << ",\n";
  return out.str();
}

}  // namespace condense

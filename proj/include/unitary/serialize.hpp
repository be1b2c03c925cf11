#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "unitary/certify.hpp"
#include "unitary/density.hpp"
#include "unitary/gaps.hpp"

namespace unitary {

// Fixed significant-digit formatting; 17 digits round-trips any double, so
// identical inputs always serialize to identical bytes.
inline std::string fmt_real(double v, int significant_digits = 17) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, v);
  return buf;
}

// Minimal ordered JSON emitter. Keys appear exactly in insertion order and
// doubles are always %.17g, which nlohmann-style serializers do not
// guarantee.
class JsonWriter {
public:
  JsonWriter& begin_object() { return open('{'); }
  JsonWriter& end_object() { return close('}'); }
  JsonWriter& begin_array() { return open('['); }
  JsonWriter& end_array() { return close(']'); }

  JsonWriter& key(std::string_view k) {
    separate();
    out_ += '"';
    out_ += k;
    out_ += "\":";
    pending_value_ = true;
    return *this;
  }

  JsonWriter& value(double v) { return raw(fmt_real(v)); }
  JsonWriter& value(int v) { return raw(std::to_string(v)); }
  JsonWriter& value(std::int64_t v) { return raw(std::to_string(v)); }
  JsonWriter& value(std::uint64_t v) { return raw(std::to_string(v)); }
  JsonWriter& value(bool v) { return raw(v ? "true" : "false"); }
  JsonWriter& value(std::string_view s) {
    separate();
    out_ += '"';
    for (char c : s) {
      if (c == '"' || c == '\\') out_ += '\\';
      out_ += c;
    }
    out_ += '"';
    return *this;
  }
  JsonWriter& null() { return raw("null"); }

  const std::string& str() const noexcept { return out_; }

private:
  JsonWriter& open(char c) {
    separate();
    out_ += c;
    depth_need_comma_.push_back(false);
    return *this;
  }
  JsonWriter& close(char c) {
    out_ += c;
    depth_need_comma_.pop_back();
    if (!depth_need_comma_.empty()) depth_need_comma_.back() = true;
    return *this;
  }
  JsonWriter& raw(std::string_view s) {
    separate();
    out_ += s;
    return *this;
  }
  void separate() {
    if (pending_value_) {
      pending_value_ = false;
      return;
    }
    if (!depth_need_comma_.empty()) {
      if (depth_need_comma_.back()) out_ += ',';
      depth_need_comma_.back() = true;
    }
  }

  std::string out_;
  std::vector<bool> depth_need_comma_;
  bool pending_value_ = false;
};

inline std::string_view to_string(CertifiedFunction f) {
  switch (f) {
    case CertifiedFunction::MarginSlopeSurrogate: return "margin_slope_surrogate";
    case CertifiedFunction::GapMargin: return "gap_margin";
  }
  return "unknown";
}

inline std::string_view to_string(Connectivity c) {
  switch (c) {
    case Connectivity::Connected: return "connected";
    case Connectivity::Disconnected: return "disconnected";
    case Connectivity::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

inline std::string_view to_string(ClassifyRule r) {
  switch (r) {
    case ClassifyRule::DiscreteNonnegative: return "discrete-range";
    case ClassifyRule::DenseUnitInterval: return "dense-in-[1,inf)";
    case ClassifyRule::FiniteInequalities: return "finite-inequalities";
    case ClassifyRule::TailInequality: return "tail-inequality";
  }
  return "unknown";
}

inline std::string_view to_string(InequalityVerdict v) {
  switch (v) {
    case InequalityVerdict::Holds: return "holds";
    case InequalityVerdict::Fails: return "fails";
    case InequalityVerdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

inline void write_json(JsonWriter& w, const GridCertificate& cert) {
  w.begin_object();
  w.key("function").value(to_string(cert.function));
  if (cert.witness_m)
    w.key("m").value(*cert.witness_m);
  else
    w.key("m").null();
  w.key("interval").begin_array().value(cert.lo).value(cert.hi).end_array();
  w.key("grid_points").value(cert.grid_points);
  w.key("margin").value(cert.margin);
  w.key("slope_bound").value(cert.slope_bound);
  w.key("min_observed").value(cert.min_observed);
  w.key("verdict").value(cert.verdict);
  w.end_object();
}

inline void write_json(JsonWriter& w, const EtaStarResult& res) {
  w.begin_object();
  w.key("value").value(res.value);
  w.key("bracket").begin_array().value(res.bracket_lo).value(res.bracket_hi).end_array();
  w.key("iterations").value(res.iterations);
  w.key("equation_residual").value(res.equation_residual);
  w.end_object();
}

inline void write_json(JsonWriter& w, const GapInterval& gap) {
  w.begin_object();
  w.key("lo").value(gap.lo);
  w.key("hi").value(gap.hi);
  w.key("witness_m").value(gap.witness_m);
  w.key("r").value(gap.r);
  w.end_object();
}

inline void write_json(JsonWriter& w, const GreedyTrace& trace, bool include_steps = true) {
  w.begin_object();
  w.key("r").value(trace.r);
  w.key("target").value(trace.target);
  w.key("converged").value(trace.converged);
  w.key("residual").value(trace.residual);
  w.key("achieved").value(trace.achieved);
  w.key("steps_used").value(trace.steps.size());
  w.key("result").begin_array();
  for (const auto& f : trace.result.factors())
    w.begin_array().value(f.prime).value(static_cast<std::uint64_t>(f.exponent)).end_array();
  w.end_array();
  w.key("result_log").value(trace.result.log_value());
  if (include_steps) {
    w.key("steps").begin_array();
    for (const auto& s : trace.steps) {
      w.begin_object();
      w.key("prime_index").value(s.prime_index);
      if (s.exponent)
        w.key("exponent").value(static_cast<std::uint64_t>(*s.exponent));
      else
        w.key("exponent").value(std::string_view("skipped"));
      w.key("partial_log").value(s.partial_log);
      w.end_object();
    }
    w.end_array();
  }
  w.end_object();
}

inline void write_json(JsonWriter& w, const ComponentReport& report) {
  w.begin_object();
  w.key("r").value(report.r);
  w.key("enumeration_limit").value(report.enumeration_limit);
  w.key("resolution").value(report.resolution);
  w.key("estimated_components").value(report.estimated_components);
  w.key("heuristic").value(report.heuristic);
  w.key("gaps_consistent").value(report.gaps_consistent);
  w.key("analytic_gaps").begin_array();
  for (const auto& gap : report.analytic_gaps) write_json(w, gap);
  w.end_array();
  w.key("clusters").begin_array();
  for (const auto& c : report.clusters) {
    w.begin_object();
    w.key("min").value(c.min);
    w.key("max").value(c.max);
    w.key("count").value(c.count);
    w.end_object();
  }
  w.end_array();
  w.end_object();
}

inline void write_json(JsonWriter& w, const EkEstimate& est) {
  w.begin_object();
  w.key("k").value(est.k);
  w.key("r_threshold").value(est.r_threshold);
  w.key("heuristic").value(est.heuristic);
  w.key("non_monotone_warning").value(est.non_monotone_warning);
  w.key("bracket").begin_array().value(est.bracket_lo).value(est.bracket_hi).end_array();
  w.key("enumeration_limit").value(est.enumeration_limit);
  w.key("resolution").value(est.resolution);
  w.end_object();
}

// One value per line at full precision; optional single header line.
inline void write_csv(std::ostream& os, const std::vector<double>& values, bool header = false,
                      std::string_view column_name = "sigma_value") {
  if (header) os << column_name << '\n';
  for (double v : values) os << fmt_real(v) << '\n';
}

}  // namespace unitary

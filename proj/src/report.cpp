#include "paradv/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "paradv/error.hpp"

namespace paradv {

using nlohmann::json;

double round_significant(double v, int digits) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

std::string format_real(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Enumerated: return "enumerated";
    case Mode::ClosedForm: return "closed-form";
    case Mode::Spectral: return "spectral";
  }
  return "?";
}

Mode mode_from_string(const std::string& s) {
  if (s == "enumerated") return Mode::Enumerated;
  if (s == "closed-form") return Mode::ClosedForm;
  if (s == "spectral") return Mode::Spectral;
  throw Error(ErrorCode::InvalidArgument, "unknown computation mode '" + s + "'");
}

BoundMode bound_mode_from_string(const std::string& s) {
  if (s == "combinatorial") return BoundMode::Combinatorial;
  if (s == "spectral") return BoundMode::Spectral;
  if (s == "all") return BoundMode::All;
  throw Error(ErrorCode::InvalidArgument, "unknown bound mode '" + s + "'");
}

std::string to_string(BoundMode m) {
  switch (m) {
    case BoundMode::Combinatorial: return "combinatorial";
    case BoundMode::Spectral: return "spectral";
    case BoundMode::All: return "all";
  }
  return "?";
}

namespace {

std::string kind_name(FieldKind k) {
  switch (k) {
    case FieldKind::Integer: return "integer";
    case FieldKind::Real: return "real";
    case FieldKind::Label: return "label";
  }
  return "?";
}

FieldKind kind_from_string(const std::string& s) {
  if (s == "integer") return FieldKind::Integer;
  if (s == "real") return FieldKind::Real;
  if (s == "label") return FieldKind::Label;
  throw Error(ErrorCode::InvalidArgument, "unknown field kind '" + s + "'");
}

Field integer_field(std::string name, Mode mode, const BigInt& v) {
  return Field{std::move(name), mode, FieldKind::Integer, v.str(), 0.0};
}

Field real_field(std::string name, Mode mode, double v) {
  return Field{std::move(name), mode, FieldKind::Real, {}, round_significant(v)};
}

Field label_field(std::string name, Mode mode, std::string v) {
  return Field{std::move(name), mode, FieldKind::Label, std::move(v), 0.0};
}

json real_json(double v) { return round_significant(v); }

}  // namespace

const Field* BoundReport::find(const std::string& name, Mode m) const {
  for (const auto& f : fields) {
    if (f.name == name && f.mode == m) return &f;
  }
  return nullptr;
}

BoundReport compute_bound_report(unsigned n, unsigned K, Rational epsilon, unsigned p, const BoundOptions& opts) {
  if (p == 0) throw Error(ErrorCode::InvalidArgument, "p must be >= 1");
  const auto inst = build_counting_instance(n, K, epsilon);
  BoundReport rep;
  rep.n = n;
  rep.N = inst.N();
  rep.K = K;
  rep.epsilon = epsilon;
  rep.p = p;
  rep.mode = opts.mode;

  if (opts.mode != BoundMode::Spectral) {
    const auto cf = counting_closed_forms(inst.N(), K, epsilon, p);
    rep.fields.push_back(integer_field("h", Mode::ClosedForm, cf.h));
    rep.fields.push_back(integer_field("h_prime", Mode::ClosedForm, cf.h_prime));
    rep.fields.push_back(integer_field("ell", Mode::ClosedForm, cf.ell_single));
    rep.fields.push_back(integer_field("ell_prime", Mode::ClosedForm, cf.ell_prime_upper));
    rep.fields.push_back(
        real_field("theorem2", Mode::ClosedForm, theorem2_bound(cf.h, cf.h_prime, cf.ell_single, cf.ell_prime_upper)));

    const auto rel = enumerate_relation(inst);
    const auto ex = extrema(rel, p);
    rep.fields.push_back(integer_field("h", Mode::Enumerated, ex.h));
    rep.fields.push_back(integer_field("h_prime", Mode::Enumerated, ex.h_prime));
    rep.fields.push_back(integer_field("ell", Mode::Enumerated, ex.ell));
    rep.fields.push_back(integer_field("ell_prime", Mode::Enumerated, ex.ell_prime));
    rep.fields.push_back(label_field("ell_row", Mode::Enumerated, rel.X[ex.ell_row].hex()));
    rep.fields.push_back(label_field("ell_tuple", Mode::Enumerated, ex.ell_tuple.str()));
    rep.fields.push_back(label_field("ell_prime_col", Mode::Enumerated, rel.Y[ex.ell_prime_col].hex()));
    rep.fields.push_back(label_field("ell_prime_tuple", Mode::Enumerated, ex.ell_prime_tuple.str()));
    rep.fields.push_back(real_field("theorem2", Mode::Enumerated, theorem2_bound(ex.h, ex.h_prime, ex.ell, ex.ell_prime)));

    if (ex.h != cf.h)
      rep.warnings.push_back({"h", ex.h.str(), cf.h.str(), rel.X[ex.h_row].hex(), ""});
    if (ex.h_prime != cf.h_prime)
      rep.warnings.push_back({"h_prime", ex.h_prime.str(), cf.h_prime.str(), rel.Y[ex.h_prime_col].hex(), ""});
    if (ex.ell != cf.ell_single)
      rep.warnings.push_back({"ell", ex.ell.str(), cf.ell_single.str(), rel.X[ex.ell_row].hex(), ex.ell_tuple.str()});
    if (ex.ell_prime > cf.ell_prime_upper)
      rep.warnings.push_back({"ell_prime", ex.ell_prime.str(), cf.ell_prime_upper.str(),
                              rel.Y[ex.ell_prime_col].hex(), ex.ell_prime_tuple.str()});
  }

  if (opts.mode != BoundMode::Combinatorial && inst.X.size() + inst.Y.size() <= opts.max_spectral_dim) {
    const auto t1 = theorem1_bound(counting_adversary(inst), p);
    rep.fields.push_back(real_field("lambda_gamma", Mode::Spectral, t1.lambda_gamma));
    rep.fields.push_back(real_field("max_filtered_lambda", Mode::Spectral, t1.max_filtered_lambda));
    rep.fields.push_back(label_field("worst_tuple", Mode::Spectral, t1.worst_tuple.str()));
    rep.fields.push_back(real_field("theorem1_ratio", Mode::Spectral, t1.ratio));
  }

  rep.fields.push_back(real_field("theorem3", Mode::ClosedForm, theorem3_bound(inst.N(), K, epsilon, p)));
  return rep;
}

std::string render_text(const BoundReport& r) {
  std::ostringstream os;
  char buf[64];
  auto real = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.9f", v);
    return std::string(buf);
  };
  auto text = [&](const std::string& name, Mode m) -> std::string {
    const Field* f = r.find(name, m);
    return f ? f->text : "-";
  };
  os << "instance  n=" << r.n << " N=" << r.N << " K=" << r.K << " eps=" << r.epsilon.str() << " p=" << r.p
     << " mode=" << to_string(r.mode) << "\n";
  if (r.find("h", Mode::ClosedForm)) {
    os << "[closed-form] h=" << text("h", Mode::ClosedForm) << " h'=" << text("h_prime", Mode::ClosedForm)
       << " ell=" << text("ell", Mode::ClosedForm) << " ell'<=" << text("ell_prime", Mode::ClosedForm) << "\n";
    os << "[closed-form] theorem2 = " << real(r.find("theorem2", Mode::ClosedForm)->real) << "\n";
    os << "[enumerated]  h=" << text("h", Mode::Enumerated) << " h'=" << text("h_prime", Mode::Enumerated)
       << " ell=" << text("ell", Mode::Enumerated) << " ell'=" << text("ell_prime", Mode::Enumerated)
       << "  (ell witness row " << text("ell_row", Mode::Enumerated) << " tuple " << text("ell_tuple", Mode::Enumerated)
       << "; ell' witness col " << text("ell_prime_col", Mode::Enumerated) << " tuple "
       << text("ell_prime_tuple", Mode::Enumerated) << ")\n";
    os << "[enumerated]  theorem2 = " << real(r.find("theorem2", Mode::Enumerated)->real) << "\n";
  }
  if (const Field* ratio = r.find("theorem1_ratio", Mode::Spectral)) {
    os << "[spectral]    lambda_gamma = " << real(r.find("lambda_gamma", Mode::Spectral)->real)
       << "  max_filtered_lambda = " << real(r.find("max_filtered_lambda", Mode::Spectral)->real)
       << "  worst_tuple = " << text("worst_tuple", Mode::Spectral) << "\n";
    os << "[spectral]    theorem1 ratio = " << real(ratio->real) << "\n";
  } else if (r.mode != BoundMode::Combinatorial) {
    os << "[spectral]    skipped (matrix dimension above limit)\n";
  }
  os << "[closed-form] theorem3 = " << real(r.find("theorem3", Mode::ClosedForm)->real) << "\n";
  for (const auto& w : r.warnings) {
    os << "WARN " << w.quantity << ": enumerated=" << w.enumerated << " closed-form=" << w.closed_form
       << " witness row=" << w.witness_row;
    if (!w.witness_tuple.empty()) os << " tuple=" << w.witness_tuple;
    os << "\n";
  }
  return os.str();
}

json to_json(const BoundReport& r) {
  json fields = json::array();
  for (const auto& f : r.fields) {
    json jf{{"name", f.name}, {"mode", to_string(f.mode)}, {"kind", kind_name(f.kind)}};
    if (f.kind == FieldKind::Real) jf["value"] = f.real;
    else jf["value"] = f.text;
    fields.push_back(std::move(jf));
  }
  json warnings = json::array();
  for (const auto& w : r.warnings) {
    warnings.push_back({{"quantity", w.quantity},
                        {"enumerated", w.enumerated},
                        {"closed_form", w.closed_form},
                        {"witness_row", w.witness_row},
                        {"witness_tuple", w.witness_tuple}});
  }
  return json{{"kind", "bound"},
              {"instance",
               {{"n", r.n}, {"N", r.N}, {"K", r.K}, {"eps", r.epsilon.str()}, {"p", r.p}, {"mode", to_string(r.mode)}}},
              {"fields", fields},
              {"warnings", warnings}};
}

BoundReport bound_report_from_json(const json& j) {
  BoundReport r;
  const auto& inst = j.at("instance");
  r.n = inst.at("n").get<unsigned>();
  r.N = inst.at("N").get<std::uint64_t>();
  r.K = inst.at("K").get<unsigned>();
  r.epsilon = Rational::parse(inst.at("eps").get<std::string>());
  r.p = inst.at("p").get<unsigned>();
  r.mode = bound_mode_from_string(inst.at("mode").get<std::string>());
  for (const auto& jf : j.at("fields")) {
    Field f{jf.at("name").get<std::string>(), mode_from_string(jf.at("mode").get<std::string>()),
            kind_from_string(jf.at("kind").get<std::string>()), {}, 0.0};
    if (f.kind == FieldKind::Real) f.real = jf.at("value").get<double>();
    else f.text = jf.at("value").get<std::string>();
    r.fields.push_back(std::move(f));
  }
  for (const auto& jw : j.at("warnings")) {
    r.warnings.push_back({jw.at("quantity").get<std::string>(), jw.at("enumerated").get<std::string>(),
                          jw.at("closed_form").get<std::string>(), jw.at("witness_row").get<std::string>(),
                          jw.at("witness_tuple").get<std::string>()});
  }
  return r;
}

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> cols{"n",        "N",        "K",         "eps",      "p",
                                             "h",        "hp",       "ell_enum",  "ellp_enum", "ell_cf",
                                             "ellp_cf",  "thm2_enum", "thm2_cf", "thm1_ratio", "thm3"};
  return cols;
}

SweepRow flatten(const BoundReport& r) {
  auto text = [&](const char* name, Mode m) {
    const Field* f = r.find(name, m);
    return f ? f->text : std::string("NA");
  };
  auto real = [&](const char* name, Mode m) {
    const Field* f = r.find(name, m);
    return f ? format_real(f->real) : std::string("NA");
  };
  SweepRow row;
  row.values = {std::to_string(r.n),
                std::to_string(r.N),
                std::to_string(r.K),
                r.epsilon.str(),
                std::to_string(r.p),
                text("h", Mode::Enumerated),
                text("h_prime", Mode::Enumerated),
                text("ell", Mode::Enumerated),
                text("ell_prime", Mode::Enumerated),
                text("ell", Mode::ClosedForm),
                text("ell_prime", Mode::ClosedForm),
                real("theorem2", Mode::Enumerated),
                real("theorem2", Mode::ClosedForm),
                real("theorem1_ratio", Mode::Spectral),
                real("theorem3", Mode::ClosedForm)};
  return row;
}

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  const auto& cols = sweep_columns();
  for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c];
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.values.size(); ++c) os << (c ? "," : "") << row.values[c];
    os << "\n";
  }
  return os.str();
}

json to_json(const SpectralBoundReport& r) {
  return json{{"lambda_gamma", real_json(r.lambda_gamma)},
              {"worst_tuple", r.worst_tuple.indices},
              {"max_filtered_lambda", real_json(r.max_filtered_lambda)},
              {"ratio", real_json(r.ratio)}};
}

json to_json(const ExtremaReport& e, const RelationTable& r) {
  return json{{"p", e.p},
              {"h", e.h.str()},
              {"h_prime", e.h_prime.str()},
              {"ell", e.ell.str()},
              {"ell_prime", e.ell_prime.str()},
              {"h_row", r.X[e.h_row].hex()},
              {"h_prime_col", r.Y[e.h_prime_col].hex()},
              {"ell_row", r.X[e.ell_row].hex()},
              {"ell_tuple", e.ell_tuple.indices},
              {"ell_prime_col", r.Y[e.ell_prime_col].hex()},
              {"ell_prime_tuple", e.ell_prime_tuple.indices}};
}

json to_json(const ClosedFormReport& c) {
  return json{{"h", c.h.str()},
              {"h_prime", c.h_prime.str()},
              {"ell_single", c.ell_single.str()},
              {"ell_prime_upper", c.ell_prime_upper.str()}};
}

json to_json(const CountEstimate& c) {
  json rows = json::array();
  for (std::size_t m = 0; m < c.distribution.size(); ++m)
    rows.push_back({m, real_json(c.distribution[m]), real_json(c.estimates[m]), c.rounded[m]});
  return json{{"N", c.N},
              {"K", c.K},
              {"t_bits", c.t_bits},
              {"queries", c.queries},
              {"distribution_columns", {"m", "probability", "khat", "khat_rounded"}},
              {"distribution", rows},
              {"success_prob", real_json(c.success_prob)},
              {"khat_mode", c.khat_mode},
              {"khat_mode_prob", real_json(c.khat_mode_prob)}};
}

json to_json(const ParallelCountResult& r) {
  json combined = json::array();
  for (const auto& [v, pv] : r.combined_distribution) combined.push_back({v, real_json(pv)});
  return json{{"p", r.p},
              {"block_N", r.block_N},
              {"block_K", r.block_K},
              {"t_bits", r.t_bits},
              {"block", to_json(r.block)},
              {"combined_distribution", combined},
              {"exact_success", real_json(r.exact_success)},
              {"exact_mean", real_json(r.exact_mean)},
              {"exact_variance", real_json(r.exact_variance)},
              {"depth", r.depth},
              {"total_queries", r.total_queries},
              {"seed", r.seed},
              {"generator", "mt19937_64"},
              {"trials", r.trials},
              {"empirical_success", real_json(r.empirical_success)},
              {"empirical_mean", real_json(r.empirical_mean)},
              {"empirical_variance", real_json(r.empirical_variance)},
              {"variance_stderr", real_json(r.variance_stderr)}};
}

json to_json(const ProgressTrace& t, const Schedule& sch) {
  json steps = json::array();
  for (const auto& step : sch.unitaries) {
    json names = json::array();
    for (const auto& g : step) names.push_back(gate_name(g));
    steps.push_back(names);
  }
  json W = json::array(), deltas = json::array();
  for (double w : t.W) W.push_back(real_json(w));
  for (double d : t.deltas) deltas.push_back(real_json(d));
  return json{{"schedule",
               {{"description", sch.description},
                {"seed", sch.seed},
                {"generator", "mt19937_64"},
                {"n", sch.layout.n},
                {"p", sch.layout.p},
                {"workspace", sch.layout.workspace},
                {"rounds", sch.rounds()},
                {"unitaries", steps}}},
              {"lambda_gamma", real_json(t.lambda)},
              {"W", W},
              {"deltas", deltas},
              {"max_filtered_lambda", real_json(t.max_filtered_lambda)},
              {"worst_tuple", t.worst_tuple.indices},
              {"step_bound", real_json(t.step_bound)},
              {"observed_constant", real_json(t.observed_constant)},
              {"max_imaginary", real_json(t.max_imaginary)},
              {"step_bound_ok", t.step_bound_ok}};
}

json to_json(const OverlapReport& r) {
  json pairs = json::array();
  for (const auto& p : r.pairs) pairs.push_back({p.row, p.col, real_json(p.magnitude), p.distinguishable});
  return json{{"error_budget", real_json(r.error_budget)},
              {"threshold", real_json(r.threshold)},
              {"pair_columns", {"row", "col", "overlap", "distinguishable"}},
              {"pairs", pairs},
              {"all_distinguishable", r.all_distinguishable},
              {"w_final_ratio", real_json(r.w_final_ratio)}};
}

std::string dump_document(const json& j) { return j.dump(2) + "\n"; }

}  // namespace paradv

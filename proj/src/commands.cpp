#include "mrext/commands.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "mrext/geoflow.hpp"
#include "mrext/manifold_spec.hpp"

namespace mrext {

namespace {

using nlohmann::json;

std::string index_key(std::span<const int> idx) {
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i] + 1);
  return s;
}

void print_tensor(std::ostream& os, const std::string& label, const TensorField& t,
                  const std::string& format, json* sink) {
  json comps = json::object();
  std::vector<int> idx(static_cast<std::size_t>(t.rank()));
  for (std::size_t i = 0; i < t.component_count(); ++i) {
    if (t.flat(i).is_zero()) continue;
    t.unflatten(i, idx);
    const std::string key = index_key(idx);
    if (format == "json")
      comps[key] = t.flat(i).str();
    else
      os << label << "[" << key << "] = " << t.flat(i).str() << "\n";
  }
  if (format == "json" && sink) (*sink)[label] = std::move(comps);
  if (format != "json" && comps.empty() && t.rank() >= 0) {
    bool any = false;
    for (std::size_t i = 0; i < t.component_count(); ++i)
      if (!t.flat(i).is_zero()) any = true;
    if (!any) os << label << " = 0 (all components vanish)\n";
  }
}

void print_reports(std::ostream& os, const std::vector<CheckReport>& reports,
                   const std::string& format) {
  if (format == "json") {
    os << report_to_json(reports) << "\n";
    return;
  }
  for (const auto& r : reports) {
    const char* tag = r.verdict == Verdict::Pass ? "[PASS]"
                      : r.verdict == Verdict::Fail ? "[FAIL]"
                                                   : "[ NA ]";
    os << tag << " " << r.name;
    if (!r.note.empty()) os << " -- " << r.note;
    if (r.witness) {
      os << " ; witness";
      if (!r.witness->index.empty()) {
        os << " at (";
        for (std::size_t i = 0; i < r.witness->index.size(); ++i)
          os << (i ? "," : "") << r.witness->index[i];
        os << ")";
      }
      os << ": " << r.witness->expression;
    }
    os << "\n";
  }
}

int exit_code_for(const std::vector<CheckReport>& reports) { return all_pass(reports) ? 0 : 1; }

int cmd_tensor(const BaseGeometry& geom, const CommandOptions& opts, std::ostream& out) {
  const std::string& object = opts.object;
  if (object.empty()) throw std::invalid_argument("tensor: --object is required");
  Frame frame = Frame::Adapted;
  if (opts.frame == "induced")
    frame = Frame::InducedNatural;
  else if (opts.frame != "adapted")
    throw std::invalid_argument("unknown frame '" + opts.frame + "'");

  json sink = json::object();
  sink["object"] = object;
  sink["frame"] = opts.frame;
  sink["dim"] = geom.n();

  auto in_frame = [&](const TensorField& t) {
    return frame == Frame::Adapted ? t : frame_transform(t, frame, geom);
  };

  if (object == "scalar") {
    const TotalConnection lc = lc_connection_total(geom);
    const TotalCurvature tc = curvature_total(lc, geom);
    const ExtensionMetric em = build_extension_metric(geom);
    const auto [ric, scal] = ricci_scalar_total(tc.mixed, em);
    (void)ric;
    if (opts.format == "json") {
      sink["value"] = scal.str();
      out << sink.dump(2) << "\n";
    } else {
      out << scal.str() << "\n";
    }
    return 0;
  }
  if (object == "connection") {
    const TotalConnection lc = lc_connection_total(geom);
    const TensorField coeffs =
        frame == Frame::Adapted ? lc.coeffs : connection_adapted_to_induced(geom, lc.coeffs);
    print_tensor(out, "Gamma", coeffs, opts.format, &sink);
  } else if (object == "metric-connection") {
    const MetricConnectionTotal mc = metric_connection_total(geom);
    const TensorField coeffs = frame == Frame::Adapted
                                   ? mc.conn.coeffs
                                   : connection_adapted_to_induced(geom, mc.conn.coeffs);
    print_tensor(out, "Gamma", coeffs, opts.format, &sink);
    print_tensor(out, "T", in_frame(mc.conn.torsion), opts.format, &sink);
  } else if (object == "curvature" || object == "ricci" || object == "weyl" ||
             object == "projective") {
    const TotalConnection lc = lc_connection_total(geom);
    const TotalCurvature tc = curvature_total(lc, geom);
    const ExtensionMetric em = build_extension_metric(geom);
    const auto [ric, scal] = ricci_scalar_total(tc.mixed, em);
    if (object == "curvature") {
      print_tensor(out, "R", in_frame(tc.lowered), opts.format, &sink);
    } else if (object == "ricci") {
      print_tensor(out, "Ric", in_frame(ric), opts.format, &sink);
    } else if (object == "weyl") {
      print_tensor(out, "W", in_frame(weyl_total(tc.lowered, ric, scal, em, geom.n())),
                   opts.format, &sink);
    } else {
      print_tensor(out, "P", in_frame(projective_total(tc.lowered, ric, em, geom.n())),
                   opts.format, &sink);
    }
  } else {
    throw std::invalid_argument("unknown object '" + object + "'");
  }
  if (opts.format == "json") out << sink.dump(2) << "\n";
  return 0;
}

int cmd_geodesic(const BaseGeometry& geom, const CommandOptions& opts, std::ostream& out,
                 std::ostream& err) {
  const std::size_t nn = static_cast<std::size_t>(geom.n());
  GeodesicState s0;
  auto fill = [&](std::vector<double> src, const char* what) {
    if (src.empty()) return std::vector<double>(nn, 0.0);
    if (src.size() != nn)
      throw std::invalid_argument(std::string(what) + " needs exactly " + std::to_string(nn) +
                                  " comma-separated values");
    return src;
  };
  s0.x = fill(opts.x0, "--x0");
  s0.v = fill(opts.v0, "--v0");
  s0.p = fill(opts.p0, "--p0");
  s0.q = fill(opts.q0, "--q0");

  const GeodesicSystem sys(geom);
  const Trajectory traj = integrate_geodesic(sys, s0, IntegratorConfig{opts.step, opts.steps});
  if (!opts.out_path.empty()) {
    std::ofstream f(opts.out_path);
    if (!f) throw std::invalid_argument("cannot open output file " + opts.out_path);
    write_trajectory_csv(f, sys, traj);
  } else {
    write_trajectory_csv(out, sys, traj);
  }
  if (traj.hit_pole) {
    err << "integration stopped early: " << traj.pole_message << " (last good t = "
        << traj.points.back().t << ")\n";
    return 1;
  }
  return 0;
}

std::vector<CheckReport> run_report_suite(const BaseGeometry& geom) {
  std::vector<CheckReport> all;
  auto take = [&](std::vector<CheckReport> v) {
    for (auto& r : v) all.push_back(std::move(r));
  };
  take(oracle_equivalence(geom));
  take(invariant_suite(geom));
  for (auto kind : {ConditionKind::Flatness, ConditionKind::LocalSymmetry, ConditionKind::SemiSymmetry,
                    ConditionKind::ConformalFlatness, ConditionKind::ProjectiveFlatness})
    take(condition_check(kind, geom));
  take(remark_suite(geom));
  take(rr_and_rric(geom));
  if (geom.j() && geom.metric()) take(kahler_norden_check(geom));
  return all;
}

}  // namespace

std::string report_to_json(const std::vector<CheckReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) {
    json item;
    item["name"] = r.name;
    item["verdict"] = verdict_name(r.verdict);
    if (!r.note.empty()) item["note"] = r.note;
    if (r.witness) {
      item["witness_index"] = r.witness->index;
      item["witness"] = r.witness->expression;
    }
    arr.push_back(std::move(item));
  }
  return arr.dump(2);
}

std::vector<CheckReport> report_from_json(const std::string& text) {
  const json arr = json::parse(text);
  if (!arr.is_array()) throw std::invalid_argument("report: expected a JSON array");
  std::vector<CheckReport> out;
  for (const auto& item : arr) {
    CheckReport r;
    r.name = item.at("name").get<std::string>();
    const std::string v = item.at("verdict").get<std::string>();
    r.verdict = v == "pass" ? Verdict::Pass : v == "fail" ? Verdict::Fail : Verdict::NotApplicable;
    if (item.contains("note")) r.note = item["note"].get<std::string>();
    if (item.contains("witness")) {
      Witness w;
      w.expression = item["witness"].get<std::string>();
      if (item.contains("witness_index")) w.index = item["witness_index"].get<std::vector<int>>();
      r.witness = std::move(w);
    }
    out.push_back(std::move(r));
  }
  return out;
}

int run_command(const std::string& command, const std::string& spec_path,
                const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const ManifoldSpec spec = load_spec(spec_path);
    const BaseGeometry geom = build_geometry(spec);

    if (command == "tensor") return cmd_tensor(geom, opts, out);
    if (command == "geodesic") return cmd_geodesic(geom, opts, out, err);

    std::vector<CheckReport> reports;
    if (command == "report" && opts.seed != 0 && opts.format != "json")
      out << "seed: " << opts.seed << "\n";
    if (command == "check") {
      reports = oracle_equivalence(geom);
      for (auto& r : invariant_suite(geom)) reports.push_back(std::move(r));
    } else if (command == "conditions") {
      for (auto kind : {ConditionKind::Flatness, ConditionKind::LocalSymmetry, ConditionKind::SemiSymmetry,
                        ConditionKind::ConformalFlatness, ConditionKind::ProjectiveFlatness})
        for (auto& r : condition_check(kind, geom)) reports.push_back(std::move(r));
    } else if (command == "kahler") {
      reports = kahler_norden_check(geom);
    } else if (command == "report") {
      reports = run_report_suite(geom);
    } else {
      err << "unknown command '" << command << "'\n";
      return 2;
    }

    print_reports(out, reports, opts.format);
    if (!opts.out_path.empty()) {
      std::ofstream f(opts.out_path);
      if (!f) throw std::invalid_argument("cannot open output file " + opts.out_path);
      f << report_to_json(reports) << "\n";
    }
    return exit_code_for(reports);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace mrext

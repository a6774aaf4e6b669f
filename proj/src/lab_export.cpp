#include <array>
#include <charconv>
#include <fstream>
#include <string>

#include "lab_json.hpp"
#include "swarmkit/error.hpp"
#include "swarmkit/lab.hpp"

namespace swarmkit::lab {

std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

namespace {

const char* axis(std::size_t k) { return k == 0 ? "x" : k == 1 ? "y" : "z"; }

void append_vec(std::string& out, const Vec& v) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    out += ',';
    out += format_double(v[k]);
  }
}

std::string optional_field(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

}  // namespace

std::string trajectory_csv(const engine::Trajectory& traj) {
  std::string out = "t,agent_id";
  for (std::size_t k = 0; k < traj.dim; ++k) out += std::string(",p") + axis(k);
  for (std::size_t k = 0; k < traj.dim; ++k) out += std::string(",v") + axis(k);
  if (traj.adaptive) out += ",delta,eta";
  if (traj.energy_tracked) out += ",energy";
  out += '\n';
  for (const auto& snap : traj.snapshots) {
    const std::string t = format_double(snap.time);
    for (std::size_t i = 0; i < snap.agents.size(); ++i) {
      out += t;
      out += ',';
      out += std::to_string(i);
      append_vec(out, snap.agents[i].position);
      append_vec(out, snap.agents[i].velocity);
      if (traj.adaptive) {
        out += ',' + format_double(snap.delta[i]) + ',' + format_double(snap.eta[i]);
      }
      if (traj.energy_tracked) out += ',' + format_double(snap.energy[i]);
      out += '\n';
    }
  }
  return out;
}

std::string metrics_csv(const engine::Trajectory& traj) {
  std::string out = "t,h,r_agg,d_avg,d_min";
  for (std::size_t k = 0; k < traj.dim; ++k) out += std::string(",edge_pos_err_") + axis(k);
  for (std::size_t k = 0; k < traj.dim; ++k) out += std::string(",edge_vel_err_") + axis(k);
  out += ",edge_pos_err_norm,edge_vel_err_norm,lyapunov_v,lyapunov_v_dot\n";
  for (const auto& m : traj.metrics) {
    out += format_double(m.time) + ',' + optional_field(m.h) + ',' + format_double(m.r_agg) +
           ',' + format_double(m.d_avg) + ',' + format_double(m.d_min);
    append_vec(out, m.mean_edge_pos_err);
    append_vec(out, m.mean_edge_vel_err);
    out += ',' + format_double(m.edge_pos_err_norm) + ',' + format_double(m.edge_vel_err_norm) +
           ',' + optional_field(m.lyapunov_v) + ',' + optional_field(m.lyapunov_v_dot) + '\n';
  }
  return out;
}

std::string events_csv(const engine::Trajectory& traj) {
  std::string out = "step,agent,kind,count,detail\n";
  for (const auto& e : traj.events) {
    std::string detail = e.detail;
    for (char& ch : detail) {
      if (ch == '"') ch = '\'';
      if (ch == '\n') ch = ' ';
    }
    out += std::to_string(e.step) + ',' + (e.agent ? std::to_string(*e.agent) : "") + ',' +
           engine::to_string(e.kind) + ',' + std::to_string(e.count) + ",\"" + detail + "\"\n";
  }
  return out;
}

void write_text(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw_error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) throw_error(ErrorKind::Io, "failed writing " + path.string());
}

void export_run(const engine::Trajectory& traj, const engine::SimConfig& config,
                const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw_error(ErrorKind::Io, "cannot create directory " + dir.string() + ": " + ec.message());
  write_text(dir / "trajectory.csv", trajectory_csv(traj));
  write_text(dir / "metrics.csv", metrics_csv(traj));
  write_text(dir / "events.csv", events_csv(traj));
  write_text(dir / "config.json", dump_config(config));
}

}  // namespace swarmkit::lab

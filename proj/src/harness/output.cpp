#include "aigc/harness/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace aigc::harness {

namespace {

// Locale-independent, round-trip-stable number formatting.
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::string escape_xml(const std::string& s) {
  std::string o;
  for (char c : s) {
    switch (c) {
      case '<':
        o += "&lt;";
        break;
      case '>':
        o += "&gt;";
        break;
      case '&':
        o += "&amp;";
        break;
      default:
        o += c;
    }
  }
  return o;
}

}  // namespace

RunSummary summarize(const RunResult& result, const SimConfig& cfg, int tail) {
  RunSummary s;
  s.algo = to_string(result.algo);
  s.seed = result.seed;
  s.users = cfg.env.users;
  s.capacity_gb = cfg.env.capacity_gb;
  s.episodes = static_cast<int>(result.episodes.size());
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(std::max(tail, 1)), result.episodes.size());
  if (n == 0) return s;
  for (auto it = result.episodes.end() - static_cast<long>(n); it != result.episodes.end(); ++it) {
    s.episodic_reward += it->episodic_reward;
    s.utility += it->mean_utility;
    s.hit_ratio += it->hit_ratio;
    s.violation_rate += it->violation_rate;
    s.wall_ms += it->mean_wall_ms;
  }
  const double d = static_cast<double>(n);
  s.episodic_reward /= d;
  s.utility /= d;
  s.hit_ratio /= d;
  s.violation_rate /= d;
  s.wall_ms /= d;
  return s;
}

void write_metrics_csv(std::ostream& out, const RunResult& result) {
  const std::string algo = to_string(result.algo);
  out << "algo,seed,episode,frame,slot,reward,utility,hit_ratio,violations,wall_ms\n";
  for (const auto& r : result.slots)
    out << algo << ',' << result.seed << ',' << r.episode << ',' << r.frame << ',' << r.slot << ',' << num(r.reward)
        << ',' << num(r.utility) << ',' << num(r.hit_ratio) << ',' << r.violations << ',' << num(r.wall_ms) << '\n';
}

void write_episodes_csv(std::ostream& out, const RunResult& result) {
  const std::string algo = to_string(result.algo);
  out << "algo,seed,episode,episodic_reward,utility,hit_ratio,violation_rate,capacity_violations,wall_ms\n";
  for (const auto& e : result.episodes)
    out << algo << ',' << result.seed << ',' << e.episode << ',' << num(e.episodic_reward) << ','
        << num(e.mean_utility) << ',' << num(e.hit_ratio) << ',' << num(e.violation_rate) << ','
        << e.capacity_violations << ',' << num(e.mean_wall_ms) << '\n';
}

void write_summary_csv(std::ostream& out, const std::vector<RunSummary>& rows) {
  out << "algo,seed,users,capacity_gb,episodes,episodic_reward,utility,hit_ratio,violation_rate,wall_ms\n";
  for (const auto& s : rows)
    out << s.algo << ',' << s.seed << ',' << s.users << ',' << num(s.capacity_gb) << ',' << s.episodes << ','
        << num(s.episodic_reward) << ',' << num(s.utility) << ',' << num(s.hit_ratio) << ','
        << num(s.violation_rate) << ',' << num(s.wall_ms) << '\n';
}

std::string svg_line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                           const std::vector<Series>& series) {
  constexpr double kW = 720, kH = 440, kL = 80, kR = 170, kT = 40, kB = 60;
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) throw std::invalid_argument("series x and y differ in length");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  const double pw = kW - kL - kR, ph = kH - kT - kB;
  auto px = [&](double x) { return kL + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return kT + (1.0 - (y - y0) / (y1 - y0)) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape_xml(title)
    << "</text>\n";
  o << "<line x1=\"" << kL << "\" y1=\"" << kT + ph << "\" x2=\"" << kL + pw << "\" y2=\"" << kT + ph
    << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << kL << "\" y1=\"" << kT << "\" x2=\"" << kL << "\" y2=\"" << kT + ph
    << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = x0 + (x1 - x0) * i / 5.0, yv = y0 + (y1 - y0) * i / 5.0;
    o << "<line x1=\"" << px(xv) << "\" y1=\"" << kT + ph << "\" x2=\"" << px(xv) << "\" y2=\"" << kT + ph + 5
      << "\" stroke=\"black\"/><text x=\"" << px(xv) << "\" y=\"" << kT + ph + 18
      << "\" text-anchor=\"middle\">" << num(xv) << "</text>\n";
    o << "<line x1=\"" << kL - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << kL << "\" y2=\"" << py(yv)
      << "\" stroke=\"black\"/><text x=\"" << kL - 8 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">"
      << num(yv) << "</text>\n";
  }
  o << "<text x=\"" << kL + pw / 2 << "\" y=\"" << kH - 15 << "\" text-anchor=\"middle\">" << escape_xml(x_label)
    << "</text>\n";
  o << "<text transform=\"translate(18," << kT + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
    << escape_xml(y_label) << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = kColors[k % std::size(kColors)];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series[k].x.size(); ++i)
      o << (i ? " " : "") << num(px(series[k].x[i])) << ',' << num(py(series[k].y[i]));
    o << "\"/>\n";
    const double ly = kT + 10 + 18.0 * static_cast<double>(k);
    o << "<line x1=\"" << kL + pw + 15 << "\" y1=\"" << ly << "\" x2=\"" << kL + pw + 35 << "\" y2=\"" << ly
      << "\" stroke=\"" << color << "\" stroke-width=\"2\"/><text x=\"" << kL + pw + 40 << "\" y=\"" << ly + 4
      << "\">" << escape_xml(series[k].label) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void write_run_outputs(const std::filesystem::path& dir, const RunResult& result, const SimConfig& cfg, bool plot) {
  std::filesystem::create_directories(dir);
  {
    auto out = open_out(dir / "metrics.csv");
    write_metrics_csv(out, result);
  }
  {
    auto out = open_out(dir / "episodes.csv");
    write_episodes_csv(out, result);
  }
  {
    auto out = open_out(dir / "summary.csv");
    write_summary_csv(out, {summarize(result, cfg)});
  }
  {
    auto out = open_out(dir / "config.echo.json");
    out << config_to_json(cfg) << '\n';
  }
  if (plot) {
    Series s{to_string(result.algo), {}, {}};
    for (const auto& e : result.episodes) {
      s.x.push_back(e.episode);
      s.y.push_back(e.episodic_reward);
    }
    auto out = open_out(dir / "reward.svg");
    out << svg_line_chart("Episodic reward", "episode", "episodic reward", {s});
  }
}

}  // namespace aigc::harness

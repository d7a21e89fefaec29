#include "maim/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "maim/errors.hpp"

namespace maim {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(8) << v;
  return os.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

constexpr const char* kBerHeader =
    "scheme,detector,L,N,M,rho_tar,snr_db,bits_sent,bit_errors,ber,ber_bound,seed";

}  // namespace

void write_grid_csv(const std::string& path, const SamplingGrid& grid,
                    const CellPartition& partition) {
  std::ofstream out = open_out(path);
  out << "q,x,y,cell\n";
  for (int q = 0; q < grid.Q(); ++q) {
    const Position& p = grid.points[static_cast<std::size_t>(q)];
    out << q << ',' << num(p.x) << ',' << num(p.y) << ','
        << partition.cell_of[static_cast<std::size_t>(q)] << '\n';
  }
  finish(out, path);
}

void write_anchor_csv(const std::string& path, const AnchorSet& anchors,
                      const SamplingGrid& grid, const CellPartition& partition) {
  std::ofstream out = open_out(path);
  out << "rank,q,x,y,cell\n";
  for (int i = 0; i < anchors.N(); ++i) {
    const int q = anchors.indices[static_cast<std::size_t>(i)];
    const Position& p = grid.points[static_cast<std::size_t>(q)];
    out << i << ',' << q << ',' << num(p.x) << ',' << num(p.y) << ','
        << partition.cell_of[static_cast<std::size_t>(q)] << '\n';
  }
  finish(out, path);
}

void write_ber_csv(const std::string& path, const std::vector<BerCsvRow>& rows) {
  std::ofstream out = open_out(path);
  out << kBerHeader << '\n';
  for (const BerCsvRow& r : rows) {
    out << r.scheme << ',' << r.detector << ',' << r.L << ',' << r.N << ',' << r.M << ','
        << num(r.rho_tar) << ',' << num(r.snr_db) << ',' << r.bits_sent << ',' << r.bit_errors
        << ',' << sci(r.ber) << ',' << (r.has_bound() ? sci(r.ber_bound) : std::string()) << ','
        << r.seed << '\n';
  }
  finish(out, path);
}

std::vector<BerCsvRow> read_ber_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty results file: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kBerHeader) throw IoError("unexpected results header in " + path);

  std::vector<BerCsvRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 12)
      throw IoError("malformed row " + std::to_string(line_no) + " in " + path);
    try {
      BerCsvRow r;
      r.scheme = f[0];
      r.detector = f[1];
      r.L = std::stoi(f[2]);
      r.N = std::stoi(f[3]);
      r.M = std::stoi(f[4]);
      r.rho_tar = std::stod(f[5]);
      r.snr_db = std::stod(f[6]);
      r.bits_sent = std::stoll(f[7]);
      r.bit_errors = std::stoll(f[8]);
      r.ber = std::stod(f[9]);
      if (!f[10].empty()) r.ber_bound = std::stod(f[10]);
      r.seed = std::stoull(f[11]);
      rows.push_back(std::move(r));
    } catch (const std::exception&) {
      throw IoError("malformed row " + std::to_string(line_no) + " in " + path);
    }
  }
  return rows;
}

namespace {

// Linear viewport mapping; y can be fed log10 values for the BER axis.
struct Frame {
  double x0, x1, y0, y1;          // data range
  double px0, px1, py0, py1;      // pixel range (py0 is the bottom)

  double X(double x) const { return px0 + (x - x0) / (x1 - x0) * (px1 - px0); }
  double Y(double y) const { return py0 - (y - y0) / (y1 - y0) * (py0 - py1); }
};

const char* kPalette[10] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                            "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string pt(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v;
  return os.str();
}

void svg_open(std::ofstream& out, int w, int h) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n"
      << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
}

void svg_line(std::ofstream& out, double x1, double y1, double x2, double y2,
              const std::string& stroke, double width, bool dashed = false) {
  out << "<line x1=\"" << pt(x1) << "\" y1=\"" << pt(y1) << "\" x2=\"" << pt(x2) << "\" y2=\""
      << pt(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width << '"';
  if (dashed) out << " stroke-dasharray=\"6 4\"";
  out << "/>\n";
}

void svg_text(std::ofstream& out, double x, double y, const std::string& s, int size,
              const std::string& anchor = "start") {
  out << "<text x=\"" << pt(x) << "\" y=\"" << pt(y) << "\" font-family=\"sans-serif\" font-size=\""
      << size << "\" text-anchor=\"" << anchor << "\">" << s << "</text>\n";
}

void svg_polyline(std::ofstream& out, const std::vector<std::pair<double, double>>& pix,
                  const std::string& stroke, bool dashed) {
  if (pix.size() < 2) return;
  out << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.6\"";
  if (dashed) out << " stroke-dasharray=\"6 4\"";
  out << " points=\"";
  for (const auto& [x, y] : pix) out << pt(x) << ',' << pt(y) << ' ';
  out << "\"/>\n";
}

}  // namespace

void write_grid_svg(const std::string& path, const SamplingGrid& grid,
                    const CellPartition& partition, const AnchorSet* anchors) {
  const int W = 720, H = 720, margin = 60;
  const double G = grid.half_extent_G;
  Frame f{-G, G, -G, G, static_cast<double>(margin), static_cast<double>(W - margin),
          static_cast<double>(H - margin), static_cast<double>(margin)};

  std::ofstream out = open_out(path);
  svg_open(out, W, H);

  for (int k = 0; k <= partition.N1; ++k) {
    const double x = -G + k * (2.0 * G / partition.N1);
    svg_line(out, f.X(x), f.Y(-G), f.X(x), f.Y(G), "#999999", k % partition.N1 == 0 ? 1.5 : 0.8);
  }
  for (int k = 0; k <= partition.N2; ++k) {
    const double y = -G + k * (2.0 * G / partition.N2);
    svg_line(out, f.X(-G), f.Y(y), f.X(G), f.Y(y), "#999999", k % partition.N2 == 0 ? 1.5 : 0.8);
  }
  for (const Position& p : grid.points)
    out << "<circle cx=\"" << pt(f.X(p.x)) << "\" cy=\"" << pt(f.Y(p.y))
        << "\" r=\"1.3\" fill=\"#7f7f7f\"/>\n";
  if (anchors) {
    for (int i = 0; i < anchors->N(); ++i) {
      const Position& p = grid.points[static_cast<std::size_t>(anchors->indices[static_cast<std::size_t>(i)])];
      out << "<circle cx=\"" << pt(f.X(p.x)) << "\" cy=\"" << pt(f.Y(p.y))
          << "\" r=\"5\" fill=\"#d62728\" fill-opacity=\"0.85\"/>\n";
    }
    svg_text(out, margin, margin - 18, std::string(scheme_name(anchors->scheme)) + " anchors", 14);
  }
  svg_text(out, W / 2.0, H - 18, "x (m)", 14, "middle");
  svg_text(out, 18, H / 2.0, "y (m)", 14, "middle");
  out << "</svg>\n";
  finish(out, path);
}

void write_ber_svg(const std::string& path, const std::vector<BerCsvRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("no rows to plot");

  // Group rows into curves, preserving first-appearance order.
  std::vector<std::string> keys;
  std::map<std::string, std::vector<const BerCsvRow*>> groups;
  for (const BerCsvRow& r : rows) {
    std::ostringstream k;
    k << r.scheme << '|' << r.detector << "|L" << r.L << "|N" << r.N << "|M" << r.M << "|rho"
      << num(r.rho_tar);
    auto [it, fresh] = groups.try_emplace(k.str());
    if (fresh) keys.push_back(k.str());
    it->second.push_back(&r);
  }

  double xmin = rows.front().snr_db, xmax = xmin;
  double ymin_log = 0.0;
  for (const BerCsvRow& r : rows) {
    xmin = std::min(xmin, r.snr_db);
    xmax = std::max(xmax, r.snr_db);
    if (r.bits_sent > 0 && r.ber > 0.0) ymin_log = std::min(ymin_log, std::log10(r.ber));
    if (r.has_bound() && r.ber_bound > 0.0)
      ymin_log = std::min(ymin_log, std::log10(std::min(r.ber_bound, 1.0)));
  }
  if (xmax <= xmin) xmax = xmin + 1.0;
  ymin_log = std::floor(ymin_log);
  if (ymin_log > -1.0) ymin_log = -1.0;

  const int W = 860, H = 620, ml = 70, mr = 230, mt = 40, mb = 60;
  Frame f{xmin, xmax, ymin_log, 0.0, static_cast<double>(ml), static_cast<double>(W - mr),
          static_cast<double>(H - mb), static_cast<double>(mt)};

  std::ofstream out = open_out(path);
  svg_open(out, W, H);

  for (int d = 0; d >= static_cast<int>(ymin_log); --d) {
    const double y = f.Y(d);
    svg_line(out, f.px0, y, f.px1, y, "#dddddd", 0.8);
    std::ostringstream lab;
    lab << "1e" << d;
    svg_text(out, ml - 8, y + 4, lab.str(), 12, "end");
  }
  double xstep = 1.0;
  for (double s : {1.0, 2.0, 3.0, 5.0, 10.0}) {
    if ((xmax - xmin) / s <= 11.0) {
      xstep = s;
      break;
    }
  }
  for (double x = std::ceil(xmin / xstep) * xstep; x <= xmax + 1e-9; x += xstep) {
    svg_line(out, f.X(x), f.py0, f.X(x), f.py1, "#dddddd", 0.8);
    svg_text(out, f.X(x), f.py0 + 18, num(x), 12, "middle");
  }
  svg_line(out, f.px0, f.py0, f.px1, f.py0, "#000000", 1.2);
  svg_line(out, f.px0, f.py0, f.px0, f.py1, "#000000", 1.2);
  svg_text(out, (f.px0 + f.px1) / 2, H - 20, "Es/N0 (dB)", 14, "middle");
  svg_text(out, 20, (f.py0 + f.py1) / 2, "BER", 14, "middle");

  int color_i = 0;
  double legend_y = mt + 10;
  for (const std::string& key : keys) {
    auto curve = groups[key];
    std::sort(curve.begin(), curve.end(),
              [](const BerCsvRow* a, const BerCsvRow* b) { return a->snr_db < b->snr_db; });
    const char* color = kPalette[color_i % 10];
    ++color_i;

    std::vector<std::pair<double, double>> sim_pts, bound_pts;
    for (const BerCsvRow* r : curve) {
      if (r->bits_sent > 0 && r->ber > 0.0) sim_pts.emplace_back(f.X(r->snr_db), f.Y(std::log10(r->ber)));
      if (r->has_bound() && r->ber_bound > 0.0)
        bound_pts.emplace_back(f.X(r->snr_db), f.Y(std::log10(std::min(r->ber_bound, 1.0))));
    }
    svg_polyline(out, sim_pts, color, false);
    for (const auto& [x, y] : sim_pts)
      out << "<circle cx=\"" << pt(x) << "\" cy=\"" << pt(y) << "\" r=\"2.6\" fill=\"" << color
          << "\"/>\n";
    svg_polyline(out, bound_pts, color, true);

    std::string label = key;
    std::replace(label.begin(), label.end(), '|', ' ');
    svg_line(out, W - mr + 10, legend_y - 4, W - mr + 34, legend_y - 4, color, 1.6,
             sim_pts.empty() && !bound_pts.empty());
    svg_text(out, W - mr + 40, legend_y, label, 11);
    legend_y += 18;
  }
  out << "</svg>\n";
  finish(out, path);
}

}  // namespace maim

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "levelpers/error.hpp"
#include "levelpers/report.hpp"

namespace levelpers::report {

namespace {

constexpr double kWidth = 800.0;
constexpr double kLeft = 90.0;
constexpr double kRight = 40.0;
constexpr double kTop = 30.0;
constexpr double kRow = 16.0;
constexpr double kHeading = 24.0;
constexpr double kBottom = 40.0;
constexpr double kDot = 3.5;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Track {
  double birth;
  std::optional<double> death;
  bool left_closed;
  bool right_closed;
};

struct Group {
  std::string label;
  std::vector<Track> tracks;
};

class Scale {
 public:
  explicit Scale(const std::vector<double>& criticals) {
    if (criticals.empty()) {
      lo_ = 0.0;
      hi_ = 1.0;
    } else {
      lo_ = criticals.front();
      hi_ = criticals.back();
    }
    if (hi_ - lo_ <= 0.0) {
      lo_ -= 1.0;
      hi_ += 1.0;
    }
    const double pad = (hi_ - lo_) * 0.08;
    lo_ -= pad;
    hi_ += pad;
  }
  double x(double t) const { return kLeft + (t - lo_) / (hi_ - lo_) * (kWidth - kLeft - kRight - 12.0); }
  double infinity_x() const { return kWidth - kRight; }

 private:
  double lo_ = 0.0;
  double hi_ = 1.0;
};

std::vector<std::pair<std::string, std::vector<Group>>> sections(const ResultDocument& doc) {
  std::vector<Group> level;
  for (const auto& b : doc.level) {
    const std::string label = "H" + std::to_string(b.degree);
    if (level.empty() || level.back().label != label) level.push_back({label, {}});
    for (Count m = 0; m < b.multiplicity; ++m) {
      level.back().tracks.push_back({b.birth, b.death, left_closed(b.kind), right_closed(b.kind)});
    }
  }
  std::vector<Group> sub;
  for (const auto& b : doc.sublevel) {
    const std::string label = "H" + std::to_string(b.degree);
    if (sub.empty() || sub.back().label != label) sub.push_back({label, {}});
    for (Count m = 0; m < b.multiplicity; ++m) sub.back().tracks.push_back({b.birth, b.death, true, false});
  }
  return {{"level persistence", level}, {"sub-level persistence", sub}};
}

void endpoint(std::ostringstream& out, double x, double y, bool closed) {
  out << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(kDot) << "\" "
      << (closed ? "fill=\"black\"" : "fill=\"white\" stroke=\"black\"") << "/>\n";
}

}  // namespace

std::string render_svg(const ResultDocument& doc) {
  const Scale scale(doc.criticals);
  const auto secs = sections(doc);

  double height = kTop;
  for (const auto& [title, groups] : secs) {
    height += kHeading;
    for (const auto& g : groups) height += kRow * static_cast<double>(g.tracks.size()) + kRow / 2;
  }
  const double axis_y = height + 8.0;
  height = axis_y + kBottom;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(height)
      << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(height) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << num(kWidth) << "\" height=\"" << num(height) << "\" fill=\"white\"/>\n";

  for (double t : doc.criticals) {
    const double x = scale.x(t);
    out << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(x) << "\" y2=\"" << num(axis_y)
        << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"3,3\"/>\n";
    out << "<text x=\"" << num(x) << "\" y=\"" << num(axis_y + 16.0) << "\" text-anchor=\"middle\">"
        << format_decimal(t) << "</text>\n";
  }
  out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(axis_y) << "\" x2=\"" << num(kWidth - kRight) << "\" y2=\""
      << num(axis_y) << "\" stroke=\"black\"/>\n";

  double y = kTop;
  for (const auto& [title, groups] : secs) {
    y += kHeading;
    out << "<text x=\"8\" y=\"" << num(y - 8.0) << "\" font-weight=\"bold\">" << title << "</text>\n";
    for (const auto& g : groups) {
      out << "<text x=\"" << num(kLeft - 30.0) << "\" y=\"" << num(y + kRow / 2 + 4.0) << "\">" << g.label
          << "</text>\n";
      for (const auto& t : g.tracks) {
        const double cy = y + kRow / 2;
        const double x0 = scale.x(t.birth);
        const double x1 = t.death ? scale.x(*t.death) : scale.infinity_x();
        out << "<line x1=\"" << num(x0) << "\" y1=\"" << num(cy) << "\" x2=\"" << num(x1) << "\" y2=\"" << num(cy)
            << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        endpoint(out, x0, cy, t.left_closed);
        if (t.death) {
          endpoint(out, x1, cy, t.right_closed);
        } else {
          out << "<polygon points=\"" << num(x1) << ',' << num(cy) << ' ' << num(x1 - 8.0) << ',' << num(cy - 4.0)
              << ' ' << num(x1 - 8.0) << ',' << num(cy + 4.0) << "\" fill=\"black\"/>\n";
        }
        y += kRow;
      }
      y += kRow / 2;
    }
  }
  out << "</svg>\n";
  return out.str();
}

void write_svg(const ResultDocument& doc, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open " + path.string() + " for writing");
  file << render_svg(doc);
  if (!file) throw Error("failed writing " + path.string());
}

}  // namespace levelpers::report

#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "jlp/analysis.hpp"
#include "jlp/util.hpp"

namespace jlp {

std::string format_spectrum(const DistanceSpectrum& spectrum) {
  std::ostringstream os;
  os << "# generalized distance spectrum\n";
  os << "reference";
  for (Bit b : spectrum.reference) os << ' ' << static_cast<int>(b);
  os << "\nsignal";
  os << std::setprecision(17);
  for (double v : spectrum.signal) os << ' ' << v;
  os << "\napproximate " << (spectrum.approximate ? 1 : 0) << '\n';
  os << "# d_gen multiplicity example_f\n";
  for (const auto& [key, e] : spectrum.entries) {
    os << std::fixed << std::setprecision(4) << e.d_gen << ' ' << e.multiplicity;
    os << std::defaultfloat << std::setprecision(6);
    for (double f : e.example_f) os << ' ' << f;
    os << '\n';
  }
  return os.str();
}

DistanceSpectrum parse_spectrum(const std::string& text) {
  DistanceSpectrum out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_ref = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    auto fail = [&](const std::string& what) {
      throw std::runtime_error("spectrum line " + std::to_string(lineno) + ": " + what);
    };
    if (head == "reference") {
      int b;
      while (ls >> b) {
        if (b != 0 && b != 1) fail("reference bits must be 0 or 1");
        out.reference.push_back(static_cast<Bit>(b));
      }
      have_ref = true;
    } else if (head == "signal") {
      double v;
      while (ls >> v) out.signal.push_back(v);
    } else if (head == "approximate") {
      int a = 0;
      if (!(ls >> a)) fail("missing approximate flag");
      out.approximate = a != 0;
    } else {
      SpectrumEntry e;
      try {
        e.d_gen = std::stod(head);
      } catch (const std::exception&) {
        fail("expected a distance, found '" + head + "'");
      }
      if (!(ls >> e.multiplicity) || e.multiplicity < 1) fail("bad multiplicity");
      if (!(e.d_gen > 0.0)) fail("distance must be positive");
      double f;
      while (ls >> f) e.example_f.push_back(f);
      auto& slot = out.entries[DistanceSpectrum::quantize(e.d_gen)];
      slot.d_gen = e.d_gen;
      slot.multiplicity += e.multiplicity;
      if (slot.example_f.empty()) slot.example_f = e.example_f;
    }
  }
  if (!have_ref) throw std::runtime_error("spectrum file lacks a reference line");
  return out;
}

void save_spectrum(const DistanceSpectrum& spectrum, const std::filesystem::path& path) {
  write_file_atomic(path, format_spectrum(spectrum));
}

DistanceSpectrum load_spectrum(const std::filesystem::path& path) {
  return parse_spectrum(read_file(path));
}

}  // namespace jlp

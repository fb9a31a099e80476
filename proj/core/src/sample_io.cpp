#include "fisher/sample_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "fisher/manifest.hpp"

namespace fisher {

SampleSet parse_samples(std::istream& in, const std::string& source_name) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    try {
      values.push_back(parse_double(std::string_view(line).substr(first, last - first + 1)));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(source_name + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (values.empty()) throw std::invalid_argument(source_name + ": no samples");
  try {
    return SampleSet(std::move(values));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(source_name + ": " + e.what());
  }
}

SampleSet read_samples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open sample file '" + path.string() + "'");
  return parse_samples(in, path.string());
}

void write_samples(const std::filesystem::path& path, const SampleSet& samples,
                   const std::vector<std::string>& comments) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write sample file '" + path.string() + "'");
  for (const auto& c : comments) out << "# " << c << '\n';
  for (double v : samples.values()) out << format_double(v) << '\n';
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

void write_density_csv(std::ostream& out, const DensityEstimate& density) {
  out << "x,q\n";
  for (std::size_t i = 0; i < density.grid.num_points; ++i) {
    out << format_double(density.grid.center(i)) << ',' << format_double(density.values[i]) << '\n';
  }
}

void write_density_csv(const std::filesystem::path& path, const DensityEstimate& density) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write density file '" + path.string() + "'");
  write_density_csv(out, density);
}

void write_fim_csv(std::ostream& out, const FimEstimate& fim) {
  out << "param_mu,param_nu,g,epsilon,verdict,N,scheme,cutoff\n";
  const std::size_t d = fim.names.size();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      const auto& eps = fim.epsilon_at(i, j);
      out << fim.names[i] << ',' << fim.names[j] << ',' << format_double(fim.g(i, j)) << ','
          << format_double(eps.epsilon) << ',' << to_string(eps.verdict) << ',' << fim.samples << ','
          << to_string(fim.options.scheme) << ',' << format_double(fim.options.cutoff) << '\n';
    }
  }
}

}  // namespace fisher

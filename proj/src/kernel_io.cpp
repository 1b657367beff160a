#include "graphonlab/kernel_io.hpp"

#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "graphonlab/errors.hpp"
#include "graphonlab/text_reader.hpp"

namespace graphonlab {

namespace {

using detail::TokenReader;

// Header tail: nothing (equal partition) or the m-1 interior breakpoints.
Partition read_partition_tail(TokenReader& r, int m) {
  if (!r.line_has_more()) return Partition::equal(m);
  std::vector<double> interior;
  for (int i = 0; i + 1 < m; ++i) interior.push_back(r.next<double>("breakpoint"));
  if (r.line_has_more()) throw ParseError("trailing tokens in header", r.line());
  try {
    return Partition::from_breakpoints(std::move(interior));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), r.line());
  }
}

std::vector<double> read_grid(TokenReader& r, int m) {
  std::vector<double> v(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    if (!r.next_line()) throw ParseError("expected another row of " + std::to_string(m) + " values", r.line());
    for (int j = 0; j < m; ++j) v[static_cast<std::size_t>(i) * m + j] = r.next<double>("value");
    if (r.line_has_more()) throw ParseError("trailing tokens", r.line());
  }
  return v;
}

void write_partition_tail(std::ostream& out, const Partition& p) {
  if (p.is_equal()) return;
  for (int i = 1; i < p.size(); ++i) out << ' ' << p.lower(i);
}

void write_grid(std::ostream& out, const StepKernel& W) {
  for (int i = 0; i < W.size(); ++i) {
    for (int j = 0; j < W.size(); ++j) out << (j ? " " : "") << W.value(i, j);
    out << '\n';
  }
}

template <typename T, typename Reader>
T load_with(const std::filesystem::path& path, Reader reader) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return reader(in);
}

template <typename T, typename Writer>
void save_with(const std::filesystem::path& path, const T& value, Writer writer) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  writer(out, value);
}

}  // namespace

StepKernel read_step_kernel(std::istream& in) {
  TokenReader r(in);
  if (!r.next_line()) throw ParseError("empty kernel file", 0);
  const int m = r.next<int>("step count");
  const double bound = r.next<double>("bound");
  if (m < 1) throw ParseError("step count must be positive", r.line());
  Partition p = read_partition_tail(r, m);
  auto values = read_grid(r, m);
  if (!r.at_end()) throw ParseError("unexpected content after kernel", r.line());
  try {
    return StepKernel(std::move(p), std::move(values), bound);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 0);
  }
}

StepKernel load_step_kernel(const std::filesystem::path& path) {
  return load_with<StepKernel>(path, [](std::istream& in) { return read_step_kernel(in); });
}

void write_step_kernel(std::ostream& out, const StepKernel& W) {
  const auto old = out.precision(std::numeric_limits<double>::max_digits10);
  out << W.size() << ' ' << W.bound();
  write_partition_tail(out, W.partition());
  out << '\n';
  write_grid(out, W);
  out.precision(old);
}

void save_step_kernel(const std::filesystem::path& path, const StepKernel& W) {
  save_with(path, W, [](std::ostream& out, const StepKernel& w) { write_step_kernel(out, w); });
}

KDigraphon read_digraphon(std::istream& in) {
  TokenReader r(in);
  if (!r.next_line()) throw ParseError("empty digraphon file", 0);
  const int k = r.next<int>("color count");
  const int m = r.next<int>("step count");
  if (k < 1) throw ParseError("color count must be positive", r.line());
  if (m < 1) throw ParseError("step count must be positive", r.line());
  const Partition p = read_partition_tail(r, m);
  std::vector<StepKernel> layers;
  for (int h = 0; h < k; ++h) layers.emplace_back(p, read_grid(r, m), 1.0);
  if (!r.at_end()) throw ParseError("unexpected content after digraphon", r.line());
  try {
    return KDigraphon(std::move(layers));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 0);
  }
}

KDigraphon load_digraphon(const std::filesystem::path& path) {
  return load_with<KDigraphon>(path, [](std::istream& in) { return read_digraphon(in); });
}

void write_digraphon(std::ostream& out, const KDigraphon& W) {
  const auto old = out.precision(std::numeric_limits<double>::max_digits10);
  out << W.k() << ' ' << W.partition().size();
  write_partition_tail(out, W.partition());
  out << '\n';
  for (const auto& layer : W.layers()) write_grid(out, layer);
  out.precision(old);
}

void save_digraphon(const std::filesystem::path& path, const KDigraphon& W) {
  save_with(path, W, [](std::ostream& out, const KDigraphon& w) { write_digraphon(out, w); });
}

}  // namespace graphonlab

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "susygreen/density.hpp"
#include "susygreen/pipeline.hpp"
#include "susygreen/trace.hpp"

namespace susy {

enum class OutputFormat { Csv, Json };

/// Worker count: SUSYGREEN_THREADS when set (>= 1), else hardware concurrency.
unsigned thread_cap();

/// Evaluates fn(0..n-1) on up to `threads` workers; results keep index order.
/// The first exception (lowest index) is rethrown after all workers finish.
template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& fn, unsigned threads) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  auto run = [&](unsigned w) {
    for (std::size_t i = w; i < n; i += workers) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

/// "%.15g"; negative zero prints as 0.
std::string format_number(double v);

/// Parses "-4", "2i", "-1.5+0.25i", "3-2i", "(re,im)". Throws ConfigError.
Complex parse_complex(const std::string& text);

struct GreenRow {
  std::string kernel;
  double x = 0.0;
  double y = 0.0;
  Complex value;
};

struct TraceRow {
  Complex E;
  Complex trace;
  std::array<Complex, 4> Q{};
  Complex closed;
  double max_disc = 0.0;
};

TraceRow to_row(const TraceReport& r);

std::string render_green(const std::vector<GreenRow>& rows, OutputFormat format);
std::string render_trace(const std::vector<TraceRow>& rows, OutputFormat format);
std::string render_density(const std::vector<DensityReport>& rows, OutputFormat format);

/// False on the excluded sector |arg E| < sector around the positive real
/// axis and on discs |E - e| < disc max(1, |e|) around alpha and the bound
/// state energies of h0 and h1 (poles of the trace).
bool admissible_energy(const Transformation& t, Complex E, double sector = 0.05, double disc = 0.1);

/// |E| log-spaced over [r0, r1] (nr values), arg E = 2 pi (j + 1/2) / nphi;
/// inadmissible points are dropped. Throws ConfigError on bad parameters.
std::vector<Complex> log_energy_grid(const Transformation& t, double r0, double r1, int nr, int nphi);

/// Trace reports for a list of energies, evaluated in parallel.
std::vector<TraceReport> trace_sweep(const Transformation& t, const std::vector<Complex>& energies,
                                     HalfLineConvention convention, unsigned threads, const TraceOptions& options = {});

}  // namespace susy

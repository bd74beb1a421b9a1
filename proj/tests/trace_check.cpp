// trace_check <trace.csv> constant|monotone
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "mixlab/evolution.hpp"

int main(int argc, char** argv) {
  if (argc != 3) return 2;
  std::ifstream in(argv[1]);
  std::string header;
  std::getline(in, header);
  if (header != "t,h,h1,hm1") {
    std::printf("bad header %s\n", header.c_str());
    return 1;
  }
  const mixlab::DecayTrace tr = mixlab::read_trace(argv[1]);
  const std::string mode = argv[2];
  if (tr.size() < 3) {
    std::printf("only %zu rows\n", tr.size());
    return 1;
  }
  for (std::size_t i = 1; i < tr.size(); ++i) {
    const double h0 = tr.h_norm.front(), prev = tr.h_norm[i - 1], h = tr.h_norm[i];
    if (mode == "constant" && std::abs(h - h0) > 1e-10 * h0) {
      std::printf("h drifted from %.17g to %.17g at t=%g\n", h0, h, tr.times[i]);
      return 1;
    }
    if (mode == "monotone" && h > prev * (1 + 1e-14)) {
      std::printf("h grew from %.17g to %.17g at t=%g\n", prev, h, tr.times[i]);
      return 1;
    }
  }
  std::printf("%zu rows ok\n", tr.size());
  return 0;
}

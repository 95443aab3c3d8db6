#include "fisph/coeff.hpp"

#include <cstdio>

namespace fisph {

const char* method_name(Method m) { return m == Method::contour ? "contour" : "closed_form"; }

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_coeff_csv_header(std::ostream& os) { os << "p,n,r,method,re,im,error_estimate\n"; }

void write_coeff_csv_row(std::ostream& os, const CoefficientResult& c) {
  os << c.p << ',' << c.n << ',' << fmt17(c.r) << ',' << method_name(c.method) << (c.tilde ? "_tilde" : "") << ','
     << fmt17(c.value.real()) << ',' << fmt17(c.value.imag()) << ',' << fmt17(c.error_estimate) << '\n';
}

}  // namespace fisph

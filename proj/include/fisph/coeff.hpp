#pragma once
// Coefficient records shared by the contour and closed-form paths.

#include <complex>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace fisph {

enum class Method { contour, closed_form };
const char* method_name(Method m);

struct CoefficientResult {
  int p = 5;
  int n = 1;
  double r = 0.0;
  bool tilde = false;
  std::complex<double> value;
  Method method = Method::closed_form;
  double error_estimate = 0.0;
  bool flagged = false;
  std::string note;
};

// p,n,r,method,re,im,error_estimate (tilde rows carry method suffix "_tilde")
void write_coeff_csv_header(std::ostream& os);
void write_coeff_csv_row(std::ostream& os, const CoefficientResult& c);
std::string fmt17(double x);

}  // namespace fisph

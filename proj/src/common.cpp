#include "tto/errors.hpp"
#include "tto/tolerances.hpp"

namespace tto {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::PoleAtPoint: return "PoleAtPoint";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::NotADivisor: return "NotADivisor";
    case ErrorKind::DivisionByZeroFunction: return "DivisionByZeroFunction";
    case ErrorKind::RealPole: return "RealPole";
    case ErrorKind::PoleOnBoundary: return "PoleOnBoundary";
    case ErrorKind::NotIntegrable: return "NotIntegrable";
    case ErrorKind::NotBounded: return "NotBounded";
    case ErrorKind::DegenerateSpace: return "DegenerateSpace";
    case ErrorKind::FormulaMismatch: return "FormulaMismatch";
    case ErrorKind::NotInUpperHalfPlane: return "NotInUpperHalfPlane";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::NotAnalytic: return "NotAnalytic";
    case ErrorKind::ZeroSymbol: return "ZeroSymbol";
    case ErrorKind::WitnessInvalid: return "WitnessInvalid";
    case ErrorKind::IdentityFailure: return "IdentityFailure";
    case ErrorKind::InvalidInner: return "InvalidInner";
  }
  return "Unknown";
}

bool Tolerances::set(const std::string& name, double value) {
  for (auto& [key, field] : {std::pair<const char*, double*>{"zero", &zero}, {"unimod", &unimod},
                             {"eval", &eval}, {"real", &real}, {"proj", &proj}, {"op", &op},
                             {"zero_op", &zero_op}, {"rank", &rank}, {"ker", &ker}, {"quad", &quad}}) {
    if (name == key) {
      *field = value;
      return true;
    }
  }
  return false;
}

std::vector<std::pair<std::string, double>> Tolerances::items() const {
  return {{"eval", eval}, {"ker", ker},   {"op", op},     {"proj", proj}, {"quad", quad},
          {"rank", rank}, {"real", real}, {"unimod", unimod}, {"zero", zero}, {"zero_op", zero_op}};
}

}  // namespace tto

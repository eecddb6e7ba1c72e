#pragma once

#include <map>
#include <string>

#include "bbm/fields.hpp"

namespace bbm::corpus {

ScalarField gaussian(int dim);               ///< e^{-|x|²}
ScalarField bump1d();                        ///< exp(-1/(1-x²)) on (-1,1), zero outside
ScalarField bump2d();                        ///< tensor product of two 1D bumps on (-1,1)²
ScalarField modulated_gaussian1d(double kappa); ///< e^{iκx} e^{-x²}
ScalarField plane_wave1d(double alpha);      ///< e^{iαx}
ScalarField constant(int dim, Complex c);

VectorPotential zero_potential(int dim);
VectorPotential constant_potential(int dim, double alpha); ///< every component equals alpha
VectorPotential linear_potential1d(double alpha);          ///< A(x) = αx
VectorPotential landau_gauge(double beta);                 ///< (-βx₂/2, βx₁/2)

/// "name" or "name:key=value,key=value".
struct Label {
    std::string name;
    std::map<std::string, double> params;

    double get(const std::string& key, double fallback) const;
};
Label parse_label(const std::string& text);

/// gauss1d|gauss2d|gauss3d|bump1d|bump2d|pwgauss1d[:kappa=]|planewave1d[:alpha=]|const{1,2,3}d[:value=]|zero{1,2,3}d
ScalarField resolve_field(const std::string& label);
/// zero|const[:alpha=]|linear[:alpha=] (N=1)|landau[:beta=] (N=2)
VectorPotential resolve_potential(const std::string& label, int dim);

} // namespace bbm::corpus

#include <wino/conditioning.hpp>

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace wino {

double condition_number(const Matrix<double> &matrix, MatrixNorm norm)
{
	if (matrix.empty())
		return 1.0;
	Eigen::MatrixXd m(matrix.rows(), matrix.cols());
	for (std::size_t i = 0; i < matrix.rows(); i++)
		for (std::size_t j = 0; j < matrix.cols(); j++)
			m(i, j) = matrix(i, j);

	const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
	const Eigen::VectorXd &sigma = svd.singularValues();
	const double largest = sigma(0);
	const double smallest = sigma(sigma.size() - 1);
	const double tolerance = std::numeric_limits<double>::epsilon() * static_cast<double>(std::max(matrix.rows(), matrix.cols())) * largest;
	if (largest == 0.0 || smallest <= tolerance)
		return std::numeric_limits<double>::infinity();

	if (norm == MatrixNorm::two)
		return largest / smallest;
	return std::sqrt(sigma.squaredNorm()) * std::sqrt(sigma.cwiseInverse().squaredNorm());
}

} // namespace wino

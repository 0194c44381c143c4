#pragma once

#include <iosfwd>

namespace morfwork::tools
{
	/// Exit codes: 0 success, 1 domain error (unknown word, conflict, ...),
	/// 2 usage or configuration error.
	int runCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err, std::istream& in);
}

#pragma once

#include <morfwork/phonology.hpp>

#include "automaton.hpp"

namespace morfwork::detail
{
	/// One concrete instance of a rule after `where` expansion.
	struct RuleInstance
	{
		SymbolPair pair;
		int pairId = -1;
		fsa::Pattern left;
		fsa::Pattern right;
	};

	/// Expands variables and resolves atoms to pair sets. Throws morfwork::Error
	/// when an instantiated rule pair is not feasible.
	std::vector<RuleInstance> expandRule(const Alphabet& alphabet, const TwoLevelRule& rule);
}

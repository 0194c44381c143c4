#pragma once

#include <cstddef>
#include <memory>
#include <vector>

// Regular patterns over an indexed pair alphabet and their deterministic
// automata. Used to compile two-level rule contexts.
namespace morfwork::fsa
{
	/// Membership mask over pair ids.
	using PairSet = std::vector<bool>;

	struct Pattern
	{
		enum class Kind { Empty, Atom, Sequence, Alternation, Star, Optional };

		Kind kind = Kind::Empty;
		PairSet atom;
		std::vector<Pattern> items;

		static Pattern empty() { return {}; }
		static Pattern atomOf(PairSet set);
		static Pattern sequence(std::vector<Pattern> items);
		static Pattern alternation(std::vector<Pattern> items);
		static Pattern star(Pattern inner);
		static Pattern optional(Pattern inner);
	};

	/// Complete-or-partial DFA; a missing transition is -1 (dead).
	struct Dfa
	{
		int start = 0;
		std::vector<std::vector<int>> next;
		std::vector<char> accepting;

		int step(int state, int symbol) const
		{
			return state < 0 ? -1 : next[state][symbol];
		}
		bool accepts(int state) const { return state >= 0 && accepting[state]; }
		size_t size() const { return next.size(); }
	};

	/// Builds a DFA for `pattern`, or for `.* pattern` when `anyPrefix` is set.
	Dfa compile(const Pattern& pattern, size_t alphabetSize, bool anyPrefix);
}

"""concord: multi-user rule reconciliation and weekly planning.

Cooperating agents retrieve per-user rules from a document store, assemble
them into a shared rule sheet, detect conflicts between users, and produce
weekday plans that resolve those conflicts under an explicit policy.
"""

__version__ = "0.1.0"

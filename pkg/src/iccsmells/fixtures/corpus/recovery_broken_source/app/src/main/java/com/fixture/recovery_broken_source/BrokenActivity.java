package com.fixture.recovery_broken_source;

import android.app.Activity;
import android.content.BroadcastReceiver;
import android.content.IntentFilter;

public class BrokenActivity extends Activity {
    void broken( {
        int x = ;
    }

    void later(BroadcastReceiver r) {
        registerReceiver(r, new IntentFilter("com.fixture.action.LATE"));
    }
}
}

package com.fixture.sm02_vulnerable;

import android.app.Activity;
import android.content.BroadcastReceiver;
import android.content.IntentFilter;

public class LinkActivity extends Activity {
    static final String PAY = "pay" + "app";

    void listen(BroadcastReceiver receiver) {
        IntentFilter filter = new IntentFilter("android.intent.action.VIEW");
        filter.addDataScheme(PAY);
        filter.addDataScheme("content");
        registerReceiver(receiver, filter, "com.fixture.permission.LINKS", null);
    }
}
